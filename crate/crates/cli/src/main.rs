use std::fmt::Write as _;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use prtoolkit::decide::{
    decide, run_search, Certificate, DecideOptions, Report, SearchReport, Status,
};
use prtoolkit::model::{ast_from_json, classify, from_json, parse_equation_text, EquationClass};
use prtoolkit::polyexp::{
    compute_constants, diagonalize, modular_certificate_search, solution_count_bound,
    PolyExpOptions, DEFAULT_MMAX, DEFAULT_PARTITION_CAP,
};
use prtoolkit::ramsey::{
    canonical_coloring, enumerate_solutions, filter_injectivity, search_budget_from_env,
    verify_coloring, CanonicalColoring, SearchOutcome, DEFAULT_ENUM_BUDGET,
};
use prtoolkit::sunit::{raw_unit_equation_bound, subgroup_rank, sunit_solution_bound};
use prtoolkit::{Domain, Rat};
use serde_json::json;

/// Partition regularity of equations: deciders, certificates and finite
/// coloring search.
#[derive(Parser, Debug)]
#[command(name = "prtoolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide partition regularity of an equation or system.
    Decide(DecideArgs),
    /// Search for a coloring of [1..N] with no monochromatic solution.
    Search(SearchArgs),
    /// List the solutions inside [1..N].
    Enumerate(EnumerateArgs),
    /// Look for a modular certificate that the diagonal sum of a
    /// polynomial-exponential equation never vanishes.
    Certify(CertifyArgs),
    /// Rank of a finitely generated subgroup of Q^x.
    Rank(RankArgs),
    /// Solution-count bounds.
    Bound(BoundArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Equation text, e.g. "x + y = z" or "x - y = 1 ; x*y = 6".
    #[arg(long, conflicts_with = "file")]
    expr: Option<String>,
    /// File with equation text or a JSON document ("-" reads stdin).
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args, Debug)]
struct DecideArgs {
    #[command(flatten)]
    input: Input,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Solution domain (N or Z); defaults to N, or Z for exponential equations.
    #[arg(long)]
    domain: Option<Domain>,
    /// Search window [-B, B] when no dominance threshold exists.
    #[arg(long)]
    bound: Option<u64>,
    /// Largest modulus tried for a modular certificate.
    #[arg(long, default_value_t = DEFAULT_MMAX)]
    mmax: u64,
    /// Cap on columns (linear) and terms (exponential) for partition searches.
    #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
    cap: usize,
    /// Comma-separated generators of a subgroup of Q^x, e.g. "2,3" or "-1,1/2".
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    json: bool,
    /// Number of colors.
    #[arg(long, default_value_t = 2)]
    colors: u32,
    /// Upper end N of the range [1..N].
    #[arg(long)]
    range: u64,
    /// Ignore constant solutions (the default).
    #[arg(long, conflicts_with = "min_injectivity")]
    exclude_constant: bool,
    /// Ignore solutions with fewer distinct values; 1 keeps constant solutions.
    #[arg(long)]
    min_injectivity: Option<usize>,
    /// Check a named coloring instead of searching: parity, mod_p:<p> or dyadic_block:<r>.
    #[arg(long)]
    check: Option<CanonicalColoring>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    range: u64,
    #[arg(long, default_value_t = 1)]
    min_injectivity: usize,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_MMAX)]
    mmax: u64,
}

#[derive(Args, Debug)]
struct RankArgs {
    /// Comma-separated generators.
    #[arg(long)]
    group: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Rank of a multiplicative group for the unit-equation bounds.
    #[arg(long, conflicts_with_all = ["expr", "file", "group"])]
    rank: Option<usize>,
    /// Generators whose rank feeds the unit-equation bounds.
    #[arg(long)]
    group: Option<String>,
    #[command(flatten)]
    input: Input,
    /// Degree of the number field in the exponential-equation bound.
    #[arg(long, default_value_t = 1)]
    degree: u64,
    #[arg(long)]
    json: bool,
}

type CliResult = Result<(i32, String), String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Decide(a) => run_decide(a),
        Command::Search(a) => run_search_cmd(a),
        Command::Enumerate(a) => run_enumerate(a),
        Command::Certify(a) => run_certify(a),
        Command::Rank(a) => run_rank(a),
        Command::Bound(a) => run_bound(a),
    };
    match result {
        Ok((code, out)) => {
            println!("{out}");
            ExitCode::from(code as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_input(input: &Input) -> Result<(EquationClass, Vec<String>, Option<String>), String> {
    let (text, from_file) = match (&input.expr, &input.file) {
        (Some(e), _) => (e.clone(), false),
        (None, Some(path)) if path == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            (s, true)
        }
        (None, Some(path)) => (
            std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
            true,
        ),
        (None, None) => return Err("give an equation with --expr or --file".into()),
    };
    if from_file && text.trim_start().starts_with('{') {
        return match from_json(&text) {
            Ok(class) => Ok((class, vec![], None)),
            Err(first) => {
                let system = ast_from_json(&text).map_err(|_| first.to_string())?;
                let c = classify(&system).map_err(|e| e.to_string())?;
                Ok((c.class, c.notes, Some(system.to_string())))
            }
        };
    }
    let system = parse_equation_text(&text).map_err(|e| e.to_string())?;
    let c = classify(&system).map_err(|e| e.to_string())?;
    Ok((c.class, c.notes, Some(text.trim().to_string())))
}

fn parse_group(s: &str) -> Result<Vec<Rat>, String> {
    s.split(',')
        .map(|g| {
            g.trim()
                .parse::<Rat>()
                .map_err(|_| format!("bad generator `{}`", g.trim()))
        })
        .collect()
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run_decide(a: DecideArgs) -> CliResult {
    let (class, notes, source) = read_input(&a.input)?;
    let opts = DecideOptions {
        domain: a.domain,
        column_cap: a.cap,
        polyexp: PolyExpOptions {
            mmax: a.mmax,
            user_bound: a.bound,
            partition_cap: a.cap,
            ..PolyExpOptions::default()
        },
        group: a.group.as_deref().map(parse_group).transpose()?,
    };
    let mut report = decide(&class, &opts, source.as_deref()).map_err(|e| e.to_string())?;
    report.notes.splice(0..0, notes);
    let code = report.status.exit_code();
    Ok((code, if a.json { report.to_json() } else { render_report(&report) }))
}

fn render_report(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "status: {}", r.status.as_str());
    let _ = writeln!(s, "class: {} over {}", r.class, r.domain);
    let _ = writeln!(s, "equation: {}", r.equation);
    let _ = writeln!(s, "variables: {}", r.vars.join(", "));
    match (&r.witnesses, r.witness()) {
        (Some(prtoolkit::twovar::Witnesses::All), _) => {
            let _ = writeln!(s, "witness: every constant tuple");
        }
        (_, Some(w)) if r.status != Status::NotPr => {
            let _ = writeln!(s, "witness: {w}");
        }
        _ => {}
    }
    if let Some(i) = r.infinitely_pr {
        let _ = writeln!(s, "infinitely PR: {}", if i { "yes" } else { "no" });
    }
    if let Some(h) = &r.hypothesis {
        let _ = writeln!(
            s,
            "character hypothesis: {} ({} partitions covered)",
            if h.holds { "holds" } else { "fails" },
            h.partitions_covered
        );
    }
    if let Some(p) = &r.polyexp {
        let _ = writeln!(s, "diagonal: g(s) = {}", p.diagonal);
        let _ = writeln!(s, "constants: A = {}, B = {}", p.constants.a, p.constants.b);
        let _ = writeln!(s, "solution bound: {}", p.solution_bound.formula);
    }
    if let Some(u) = &r.sunit {
        let _ = writeln!(s, "group rank: {}", u.group.rank);
        let _ = writeln!(s, "solution bound: {}", u.verdict.bound);
    }
    for c in &r.certificates {
        let _ = writeln!(s, "certificate: {}", render_certificate(c));
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = write!(s, "time: {} us", r.timing_us);
    s
}

fn render_certificate(c: &Certificate) -> String {
    match c {
        Certificate::ConstantSolution { value } => format!("constant solution {value}"),
        Certificate::AllConstants => "every constant tuple solves the system".into(),
        Certificate::ColumnsPartition {
            partition,
            integer_constant,
        } => {
            let blocks: Vec<String> = partition
                .blocks
                .iter()
                .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            format!(
                "columns partition {} with integer constant solution {}",
                blocks.join(" "),
                match integer_constant {
                    prtoolkit::rado::ConstantWitness::All => "(any)".to_string(),
                    prtoolkit::rado::ConstantWitness::Unique(w) => w.to_string(),
                }
            )
        }
        Certificate::Dominance(d) => format!(
            "dominance: every zero lies in [-{}, {}] and none was found there",
            d.s_minus(),
            d.s_plus()
        ),
        Certificate::Modular(m) => format!(
            "modular: g(s) mod {} has period {} and residues {:?}, never 0",
            m.modulus, m.period, m.residues
        ),
    }
}

fn run_search_cmd(a: SearchArgs) -> CliResult {
    let (class, _, source) = read_input(&a.input)?;
    let arity = class.vars().len().max(1);
    let min_inj = a.min_injectivity.unwrap_or(2.min(arity));
    if let Some(kind) = a.check {
        let all = enumerate_solutions(&class, a.range, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
        let sols = filter_injectivity(&all, min_inj).map_err(|e| e.to_string())?;
        let coloring = canonical_coloring(kind, a.range).map_err(|e| e.to_string())?;
        let check = verify_coloring(&coloring, &sols).map_err(|e| e.to_string())?;
        let out = if a.json {
            pretty(&json!({
                "coloring": kind.to_string(),
                "n": a.range,
                "min_injectivity": min_inj,
                "solutions": sols.len(),
                "avoids": check.avoids,
                "monochromatic": check.monochromatic,
            }))
        } else if check.avoids {
            format!("{kind} avoids all {} solutions in [1..{}]", sols.len(), a.range)
        } else {
            format!(
                "{kind} has {} monochromatic solutions, first {:?}",
                check.monochromatic.len(),
                check.monochromatic[0]
            )
        };
        return Ok((0, out));
    }
    let report = run_search(
        &class,
        a.range,
        a.colors,
        min_inj,
        search_budget_from_env(),
        source.as_deref(),
    )
    .map_err(|e| e.to_string())?;
    Ok((report.exit_code(), if a.json { pretty(&report) } else { render_search(&report) }))
}

fn render_search(r: &SearchReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "equation: {}", r.equation);
    let _ = writeln!(
        s,
        "range: [1..{}], colors: {}, solutions considered: {} (min injectivity {})",
        r.n, r.colors, r.solutions, r.min_injectivity
    );
    match &r.outcome {
        SearchOutcome::Avoiding { coloring, nodes } => {
            let _ = writeln!(s, "outcome: avoiding coloring ({nodes} nodes)");
            for c in 0..coloring.r {
                let members: Vec<String> = (1..=coloring.n())
                    .filter(|&v| coloring.color(v) == Some(c))
                    .map(|v| v.to_string())
                    .collect();
                if !members.is_empty() {
                    let _ = writeln!(s, "  color {c}: {}", members.join(" "));
                }
            }
        }
        SearchOutcome::Forced { nodes, .. } => {
            let _ = writeln!(
                s,
                "outcome: forced; every {}-coloring of [1..{}] has a monochromatic solution ({nodes} nodes)",
                r.colors, r.n
            );
        }
        SearchOutcome::Unknown { nodes, budget } => {
            let _ = writeln!(s, "outcome: unknown; budget of {budget} nodes exhausted after {nodes}");
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = write!(s, "time: {} us", r.timing_us);
    s
}

fn run_enumerate(a: EnumerateArgs) -> CliResult {
    let (class, _, _) = read_input(&a.input)?;
    let all = enumerate_solutions(&class, a.range, DEFAULT_ENUM_BUDGET).map_err(|e| e.to_string())?;
    let sols = if a.min_injectivity > 1 {
        filter_injectivity(&all, a.min_injectivity).map_err(|e| e.to_string())?
    } else {
        all
    };
    if a.json {
        return Ok((0, pretty(&sols)));
    }
    let mut s = format!("{} solutions in [1..{}] over ({})", sols.len(), a.range, sols.vars.join(", "));
    for t in &sols.tuples {
        let vals: Vec<String> = t.iter().map(u64::to_string).collect();
        let _ = write!(s, "\n({})", vals.join(", "));
    }
    Ok((0, s))
}

fn run_certify(a: CertifyArgs) -> CliResult {
    let (class, _, _) = read_input(&a.input)?;
    let EquationClass::PolyExp(e) = class else {
        return Err("certify needs a polynomial-exponential equation".into());
    };
    let g = diagonalize(&e);
    let cert = modular_certificate_search(&g, a.mmax);
    if let Some(c) = &cert {
        c.verify(&g).map_err(|e| format!("certificate failed to re-verify: {e}"))?;
    }
    let code = if cert.is_some() { 0 } else { 2 };
    let out = if a.json {
        pretty(&json!({ "diagonal": g.to_string(), "mmax": a.mmax, "certificate": cert }))
    } else {
        match &cert {
            Some(c) => format!(
                "g(s) = {g}\nmodulus {}: period {}, residues {:?}; g(s) is never 0",
                c.modulus, c.period, c.residues
            ),
            None => format!("g(s) = {g}\nno modulus up to {} certifies g(s) != 0", a.mmax),
        }
    };
    Ok((code, out))
}

fn run_rank(a: RankArgs) -> CliResult {
    let gens = parse_group(&a.group)?;
    let spec = subgroup_rank(&gens, prtoolkit::algebra::DEFAULT_FACTOR_BUDGET).map_err(|e| e.to_string())?;
    if a.json {
        return Ok((0, pretty(&spec)));
    }
    let primes: Vec<String> = spec.primes.iter().map(|p| p.to_string()).collect();
    Ok((0, format!("rank: {}\nprimes: {}", spec.rank, primes.join(", "))))
}

fn run_bound(a: BoundArgs) -> CliResult {
    if a.input.expr.is_some() || a.input.file.is_some() {
        let (class, _, _) = read_input(&a.input)?;
        let EquationClass::PolyExp(e) = class else {
            return Err("bound needs a polynomial-exponential equation".into());
        };
        let c = compute_constants(&e);
        let b = solution_count_bound(&e, a.degree);
        if a.json {
            return Ok((0, pretty(&json!({ "constants": c, "bound": b }))));
        }
        let mut s = format!("A = {}, B = {}\nbound: {}", c.a, c.b, b.formula);
        if let Some(v) = &b.exact {
            let _ = write!(s, "\nvalue: {v}");
        }
        return Ok((0, s));
    }
    let r = match (a.rank, &a.group) {
        (Some(r), _) => r,
        (None, Some(g)) => subgroup_rank(&parse_group(g)?, prtoolkit::algebra::DEFAULT_FACTOR_BUDGET)
            .map_err(|e| e.to_string())?
            .rank,
        (None, None) => return Err("give --rank, --group, --expr or --file".into()),
    };
    let three = sunit_solution_bound(r);
    let two = raw_unit_equation_bound(r);
    if a.json {
        return Ok((
            0,
            pretty(&json!({
                "rank": r,
                "three_variable_bound": three.to_string(),
                "unit_equation_bound": two.to_string(),
            })),
        ));
    }
    Ok((
        0,
        format!(
            "rank: {r}\nnonconstant solutions of ax + by + cz = 0: at most 2^{} = {three}\n\
             solutions of ax + by = 1: at most 2^{} = {two}",
            16 * (r + 1),
            8 * (r + 2)
        ),
    ))
}
