use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use unidecomp::cohooks::{cocore, cohooks, remove_cohook};
use unidecomp::crystal::{addable_boxes, e_tilde, f_tilde, removable_boxes, signature, sl2_weight, Order};
use unidecomp::decomp::{decomp_matrix, BlockSeries, Method};
use unidecomp::dsmall::{dsmall_regions, is_dsmall_by_content, residue_labels, updown_word};
use unidecomp::export;
use unidecomp::kl::{cached_basis, CosetWord};
use unidecomp::series::{enumerate_series, GroupType};
use unidecomp::symbols::{Bipartition, Charge, Glyphs, Symbol};
use unidecomp::verify::{self, Bounds, Suite};
use unidecomp::word::{cup_diagram, UpDownWord};

const ASCII_ENV: &str = "UNIDECOMP_ASCII";

/// Write to stdout; a closed pipe ends the process quietly.
fn emit(args: std::fmt::Arguments) {
    if let Err(e) = std::io::stdout().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

macro_rules! outln {
    () => { emit(format_args!("\n")) };
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

#[derive(Parser)]
#[command(name = "unidecomp", version, about = "Unipotent decomposition numbers for d-small symbols")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Tex,
}

#[derive(Args, Clone)]
struct SymbolArgs {
    /// Charge `s1,s2`.
    #[arg(long, allow_hyphen_values = true)]
    charge: Charge,
    /// Bipartition `a,b,…|c,d,…`.
    #[arg(long, allow_hyphen_values = true)]
    bipartition: Bipartition,
}

impl SymbolArgs {
    fn symbol(&self) -> Symbol {
        Symbol::new(self.bipartition.clone(), self.charge)
    }
}

#[derive(Clone, Copy)]
struct Window(i64, i64);

fn parse_window(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("window start: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("window end: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok(Window(lo, hi))
}

fn parse_order(s: &str) -> Result<Order, String> {
    let d: i64 = s.parse().map_err(|e| format!("{e}"))?;
    Order::new(d).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    E,
    F,
}

#[derive(Subcommand)]
enum Cmd {
    /// Abacus, defect, rank and d-small regions of a symbol.
    Symbol {
        #[command(flatten)]
        sym: SymbolArgs,
        /// Positions to draw, `lo..hi`.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<Window>,
        #[arg(long, value_parser = parse_order)]
        d: Option<Order>,
    },
    /// Harish-Chandra series of a group.
    Series {
        #[arg(long = "type")]
        group: GroupType,
        #[arg(long)]
        rank: u32,
    },
    /// Addable and removable i-boxes with the signature word.
    Boxes {
        #[command(flatten)]
        sym: SymbolArgs,
        #[arg(long, value_parser = parse_order)]
        d: Order,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
    },
    /// Apply a crystal operator n times.
    Crystal {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[command(flatten)]
        sym: SymbolArgs,
        #[arg(long, value_parser = parse_order)]
        d: Order,
    },
    /// Remove co-hooks down to the co-core.
    Cocore {
        #[command(flatten)]
        sym: SymbolArgs,
        /// Co-hook length; defaults to d/2.
        #[arg(long)]
        e: Option<u32>,
        #[arg(long, value_parser = parse_order, required_unless_present = "e")]
        d: Option<Order>,
    },
    /// Region choices, words, residue labels and cups.
    Dsmall {
        #[command(flatten)]
        sym: SymbolArgs,
        #[arg(long, value_parser = parse_order)]
        d: Order,
    },
    /// Members of the block of a d-small symbol or of a word.
    Block {
        #[command(flatten)]
        target: BlockTarget,
    },
    /// Decomposition matrix of a block.
    Decomp {
        #[command(flatten)]
        target: BlockTarget,
        #[arg(long, default_value = "closed")]
        method: Method,
    },
    /// Parabolic Kazhdan-Lusztig table, or one polynomial.
    Kl {
        /// Number of letters.
        #[arg(long, required_unless_present = "theta")]
        n: Option<usize>,
        /// Number of `∧`.
        #[arg(long, required_unless_present = "theta")]
        n_up: Option<usize>,
        #[arg(long, requires = "psi")]
        theta: Option<UpDownWord>,
        #[arg(long)]
        psi: Option<UpDownWord>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 5)]
        max_halfd: usize,
        #[arg(long, default_value_t = 8)]
        max_size: u32,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Args, Clone)]
#[group(required = true, multiple = true)]
struct BlockTarget {
    #[arg(long, allow_hyphen_values = true, requires_all = ["bipartition", "d"], conflicts_with = "word")]
    charge: Option<Charge>,
    #[arg(long, allow_hyphen_values = true, requires = "charge")]
    bipartition: Option<Bipartition>,
    #[arg(long, value_parser = parse_order, requires = "charge")]
    d: Option<Order>,
    /// An up-down word standing for its block.
    #[arg(long)]
    word: Option<UpDownWord>,
}

impl BlockTarget {
    fn block(&self) -> Result<BlockSeries> {
        match (&self.word, self.charge, &self.bipartition, self.d) {
            (Some(w), ..) => Ok(BlockSeries::from_word(w)),
            (None, Some(c), Some(bp), Some(d)) => Ok(BlockSeries::from_symbol(&Symbol::new(bp.clone(), c), d)?),
            _ => bail!("give either --word or --charge, --bipartition and --d"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Crystal,
    Blocks,
    Cocore,
    Decomp,
    Kl,
    All,
}

struct Ctx {
    format: Format,
    ascii: bool,
}

impl Ctx {
    fn glyphs(&self) -> Glyphs {
        if self.ascii {
            Glyphs::ASCII
        } else {
            Glyphs::UNICODE
        }
    }

    fn word(&self, w: &UpDownWord) -> String {
        if self.ascii {
            w.ascii()
        } else {
            w.to_string()
        }
    }

    fn unsupported(&self, cmd: &str) -> anyhow::Error {
        let f = match self.format {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Tex => "tex",
        };
        anyhow::anyhow!("format {f} is not available for {cmd}")
    }
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn with_schema(mut v: Value) -> Value {
    v["schema"] = json!(export::SCHEMA);
    v
}

fn region_json(th: &Symbol, d: Order) -> Result<Vec<Value>> {
    dsmall_regions(th, d)
        .iter()
        .map(|r| {
            let w = updown_word(th, d, r)?;
            let c = cup_diagram(&w);
            Ok(json!({
                "left": r.left, "right": r.right, "k": r.k,
                "right_row": r.active_right_row.number(),
                "word": w.ascii(), "labels": residue_labels(th, d, r)?,
                "cups": c.cups, "rays": c.rays,
            }))
        })
        .collect()
}

fn cmd_symbol(ctx: &Ctx, th: &Symbol, window: Option<Window>, d: Option<Order>) -> Result<()> {
    let (lo, hi) = window.map(|w| (w.0, w.1)).unwrap_or_else(|| th.default_window());
    match ctx.format {
        Format::Text => {
            outln!("{th}");
            outln!("defect {}, rank {}", th.defect(), th.rank());
            out!("{}", th.window(lo, hi).render(ctx.glyphs()));
            outln!();
            if let Some(d) = d {
                let rs = dsmall_regions(th, d);
                if rs.is_empty() {
                    outln!("not {d}-small");
                }
                for r in rs {
                    outln!("d = {d}: {r}: {}", ctx.word(&updown_word(th, d, &r)?));
                }
            }
        }
        Format::Json => {
            let [x1, x2] = th.betas();
            let beads = |b: &unidecomp::symbols::BetaSet| (lo..=hi).filter(|&x| b.contains(x)).collect::<Vec<_>>();
            let mut v = json!({
                "symbol": th.to_string(),
                "charge": th.charge, "bipartition": th.bipartition.to_string(),
                "defect": th.defect(), "rank": th.rank(),
                "window": [lo, hi], "beads": {"1": beads(&x1), "2": beads(&x2)},
            });
            if let Some(d) = d {
                v["d"] = json!(d);
                v["regions"] = json!(region_json(th, d)?);
            }
            print_json(&with_schema(v));
        }
        Format::Tex => out!("{}", export::abacus_tikz(th, lo, hi)),
        Format::Csv => return Err(ctx.unsupported("symbol")),
    }
    Ok(())
}

fn cmd_series(ctx: &Ctx, group: GroupType, rank: u32) -> Result<()> {
    let rows = enumerate_series(group, rank);
    match ctx.format {
        Format::Text => {
            outln!("{:>4} {:>4} {:>10} {:>7}", "t", "m", "charge", "defect");
            for (l, m) in &rows {
                outln!("{:>4} {:>4} {:>10} {:>7}", l.t, m, l.charge.to_string(), l.defect());
            }
        }
        Format::Csv => {
            outln!("t,m,s1,s2,defect");
            for (l, m) in &rows {
                outln!("{},{m},{},{},{}", l.t, l.charge.s1, l.charge.s2, l.defect());
            }
        }
        Format::Json => {
            let series: Vec<Value> = rows
                .iter()
                .map(|(l, m)| json!({"t": l.t, "m": m, "charge": l.charge, "defect": l.defect(), "cuspidal_rank": l.cuspidal_rank}))
                .collect();
            print_json(&json!({"schema": export::SCHEMA, "type": group, "rank": rank, "series": series}));
        }
        Format::Tex => return Err(ctx.unsupported("series")),
    }
    Ok(())
}

fn cmd_boxes(ctx: &Ctx, th: &Symbol, d: Order, i: i64) -> Result<()> {
    let i = d.reduce(i);
    let add = addable_boxes(th, i, d);
    let rem = removable_boxes(th, i, d);
    let sig = signature(th, i, d);
    match ctx.format {
        Format::Text => {
            let list = |v: &[unidecomp::crystal::BoxPosition]| v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ");
            outln!("addable {i}-boxes: {}", list(&add));
            outln!("removable {i}-boxes: {}", list(&rem));
            outln!("signature {} reduces to {}", sig, sig.reduce());
            outln!("weight {}", sl2_weight(th, i, d));
        }
        Format::Json => print_json(&json!({
            "schema": export::SCHEMA, "symbol": th.to_string(), "d": d, "i": i,
            "addable": add, "removable": rem,
            "signature": sig.to_string(), "reduced": sig.reduce().to_string(),
            "good_addable": sig.good_addable(), "good_removable": sig.good_removable(),
            "weight": sl2_weight(th, i, d),
        })),
        _ => return Err(ctx.unsupported("boxes")),
    }
    Ok(())
}

fn cmd_crystal(ctx: &Ctx, op: Op, i: i64, n: u32, th: &Symbol, d: Order) -> Result<()> {
    let i = d.reduce(i);
    let mut trace = vec![th.clone()];
    let mut cur = Some(th.clone());
    for _ in 0..n {
        cur = cur.and_then(|s| match op {
            Op::E => e_tilde(&s, i, d),
            Op::F => f_tilde(&s, i, d),
        });
        match &cur {
            Some(s) => trace.push(s.clone()),
            None => break,
        }
    }
    let name = match op {
        Op::E => "e",
        Op::F => "f",
    };
    match ctx.format {
        Format::Text => {
            for (k, s) in trace.iter().enumerate().skip(1) {
                outln!("{name}~_{i}^{k}: {s}");
            }
            match &cur {
                Some(s) => outln!("{s}"),
                None => outln!("null"),
            }
        }
        Format::Json => print_json(&json!({
            "schema": export::SCHEMA, "op": name, "i": i, "n": n, "d": d,
            "trace": trace.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "result": cur.map(|s| s.to_string()),
        })),
        _ => return Err(ctx.unsupported("crystal")),
    }
    Ok(())
}

fn cmd_cocore(ctx: &Ctx, th: &Symbol, e: u32) -> Result<()> {
    let mut cur = th.clone();
    let mut steps = Vec::new();
    while let Some(&h) = cohooks(&cur, e).first() {
        cur = remove_cohook(&cur, h)?;
        steps.push((h, cur.clone()));
    }
    debug_assert_eq!(cur, cocore(th, e));
    match ctx.format {
        Format::Text => {
            for (h, s) in &steps {
                outln!("remove {h}: {s}");
            }
            outln!("{cur}");
        }
        Format::Json => print_json(&json!({
            "schema": export::SCHEMA, "symbol": th.to_string(), "e": e,
            "steps": steps.iter().map(|(h, s)| json!({"cohook": h, "result": s.to_string()})).collect::<Vec<_>>(),
            "cocore": cur.to_string(),
        })),
        _ => return Err(ctx.unsupported("cocore")),
    }
    Ok(())
}

fn cmd_dsmall(ctx: &Ctx, th: &Symbol, d: Order) -> Result<()> {
    let rs = dsmall_regions(th, d);
    match ctx.format {
        Format::Text => {
            if rs.is_empty() {
                outln!("{th} is not {d}-small");
            }
            for r in &rs {
                let w = updown_word(th, d, r)?;
                let labels: Vec<String> = residue_labels(th, d, r)?.iter().map(|x| x.to_string()).collect();
                let c = cup_diagram(&w);
                outln!("{r}");
                outln!("  word {}  labels {}", ctx.word(&w), labels.join(" "));
                outln!("  cups {:?} rays {:?}", c.cups, c.rays);
            }
            outln!("content test: {}", is_dsmall_by_content(th, d));
        }
        Format::Json => print_json(&json!({
            "schema": export::SCHEMA, "symbol": th.to_string(), "d": d,
            "dsmall": !rs.is_empty(), "content_test": is_dsmall_by_content(th, d),
            "regions": region_json(th, d)?,
        })),
        Format::Tex => match rs.first() {
            Some(r) => out!("{}", export::cups_tikz(&updown_word(th, d, r)?)),
            None => bail!("{th} is not {d}-small"),
        },
        Format::Csv => return Err(ctx.unsupported("dsmall")),
    }
    Ok(())
}

fn cmd_block(ctx: &Ctx, b: &BlockSeries) -> Result<()> {
    match ctx.format {
        Format::Text => {
            if let Some(r) = &b.region {
                outln!("{r}");
            }
            for (k, w) in b.members.iter().enumerate() {
                let c = cup_diagram(w);
                let mut line = ctx.word(w);
                if let Some(s) = b.symbols.get(k) {
                    write!(line, "  {s}").unwrap();
                }
                write!(line, "  cups {:?}", c.cups).unwrap();
                outln!("{line}");
            }
        }
        Format::Json => {
            let members: Vec<Value> = b
                .members
                .iter()
                .enumerate()
                .map(|(k, w)| {
                    let mut v = export::cups_json(w);
                    v.as_object_mut().expect("object").remove("schema");
                    if let Some(s) = b.symbols.get(k) {
                        v["symbol"] = json!(s.to_string());
                    }
                    v
                })
                .collect();
            print_json(&json!({"schema": export::SCHEMA, "d": b.d, "region": b.region, "members": members}));
        }
        Format::Tex => {
            for w in &b.members {
                out!("{}", export::cups_tikz(w));
            }
        }
        Format::Csv => return Err(ctx.unsupported("block")),
    }
    Ok(())
}

fn cmd_decomp(ctx: &Ctx, b: &BlockSeries, method: Method) -> Result<()> {
    let m = decomp_matrix(b, method)?;
    match ctx.format {
        Format::Text => out!("{}", export::matrix_text(&m, ctx.ascii)),
        Format::Csv => out!("{}", export::matrix_csv(&m, ctx.ascii)),
        Format::Json => print_json(&export::matrix_json(&m)),
        Format::Tex => out!("{}", export::matrix_tex(&m)),
    }
    Ok(())
}

fn cmd_kl(ctx: &Ctx, n: Option<usize>, n_up: Option<usize>, theta: Option<UpDownWord>, psi: Option<UpDownWord>) -> Result<()> {
    if let (Some(th), Some(ps)) = (theta, psi) {
        if !th.same_block_shape(&ps) {
            bail!("{} and {} have different skeletons", ctx.word(&th), ctx.word(&ps));
        }
        let x = CosetWord::from_updown(&th)?;
        let y = CosetWord::from_updown(&ps)?;
        let p = cached_basis(x.len(), x.n_up())?.polynomial(&y, &x);
        match ctx.format {
            Format::Text => outln!("{p}\nat v = 1: {}", p.eval_at_one()),
            Format::Json => print_json(&json!({
                "schema": export::SCHEMA, "theta": th.ascii(), "psi": ps.ascii(),
                "poly": p.terms().collect::<Vec<_>>(), "at_one": p.eval_at_one(),
            })),
            _ => return Err(ctx.unsupported("kl")),
        }
        return Ok(());
    }
    let (n, k) = (n.context("--n is required")?, n_up.context("--n-up is required")?);
    if k > n {
        bail!("--n-up {k} exceeds --n {n}");
    }
    let b = cached_basis(n, k)?;
    match ctx.format {
        Format::Text => {
            for (x, bx) in b.iter() {
                let terms: Vec<String> = bx.iter().map(|(y, p)| format!("({p})·{y}")).collect();
                outln!("b[{x}] = {}", terms.join(" + "));
            }
        }
        Format::Csv => out!("{}", export::kl_table_csv(&b)),
        Format::Json => print_json(&export::kl_table_json(&b)),
        Format::Tex => return Err(ctx.unsupported("kl")),
    }
    Ok(())
}

fn cmd_verify(ctx: &Ctx, suite: SuiteArg, bounds: &Bounds) -> Result<bool> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Crystal => vec![Suite::Crystal],
        SuiteArg::Blocks => vec![Suite::Blocks],
        SuiteArg::Cocore => vec![Suite::Cocore],
        SuiteArg::Decomp => vec![Suite::Decomp],
        SuiteArg::Kl => vec![Suite::Kl],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let reports: Vec<verify::Report> = suites.iter().map(|&s| verify::run(s, bounds)).collect();
    let ok = reports.iter().all(|r| r.passed());
    match ctx.format {
        Format::Text => {
            for r in &reports {
                outln!("{r}");
            }
        }
        Format::Json => print_json(&json!({"schema": export::SCHEMA, "bounds": bounds, "passed": ok, "reports": reports})),
        _ => return Err(ctx.unsupported("verify")),
    }
    Ok(ok)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let ascii = std::env::var(ASCII_ENV).is_ok_and(|v| !v.is_empty() && v != "0");
    let ctx = Ctx { format: if cli.json { Format::Json } else { cli.format }, ascii };
    match cli.cmd {
        Cmd::Symbol { sym, window, d } => cmd_symbol(&ctx, &sym.symbol(), window, d)?,
        Cmd::Series { group, rank } => cmd_series(&ctx, group, rank)?,
        Cmd::Boxes { sym, d, i } => cmd_boxes(&ctx, &sym.symbol(), d, i)?,
        Cmd::Crystal { op, i, n, sym, d } => cmd_crystal(&ctx, op, i, n, &sym.symbol(), d)?,
        Cmd::Cocore { sym, e, d } => {
            let e = match (e, d) {
                (Some(e), _) if e > 0 => e,
                (Some(_), _) => bail!("--e must be positive"),
                (None, Some(d)) => d.half() as u32,
                (None, None) => bail!("give --e or --d"),
            };
            cmd_cocore(&ctx, &sym.symbol(), e)?
        }
        Cmd::Dsmall { sym, d } => cmd_dsmall(&ctx, &sym.symbol(), d)?,
        Cmd::Block { target } => cmd_block(&ctx, &target.block()?)?,
        Cmd::Decomp { target, method } => cmd_decomp(&ctx, &target.block()?, method)?,
        Cmd::Kl { n, n_up, theta, psi } => cmd_kl(&ctx, n, n_up, theta, psi)?,
        Cmd::Verify { suite, max_halfd, max_size, max_n, seed, samples } => {
            let bounds = Bounds { max_halfd, max_size, max_n, seed, samples };
            if max_halfd == 0 {
                bail!("--max-halfd must be at least 1");
            }
            if !cmd_verify(&ctx, suite, &bounds)? {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
