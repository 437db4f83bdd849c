//! Subcommand front end over the modcoh library: relation emitters,
//! spectrum tables, quotient-ring analysis, and the tuple solver, with
//! seeded, reproducible output in text, JSON, or TSV.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use modcoh::floer::{self, MeridionalSurface};
use modcoh::groebner::{self, CommIdeal, LambdaSigns, MonomialOrder, SpectralPolynomials};
use modcoh::lefschetz;
use modcoh::mumford;
use modcoh::repvar;
use modcoh::{fiber, Error, GaussRat, GeneratorTable, GradedPoly, Monomial, Poly, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    V,
    U,
    W2,
}

impl From<SpaceArg> for floer::Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::V => floer::Space::V,
            SpaceArg::U => floer::Space::U,
            SpaceArg::W2 => floer::Space::W2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => MonomialOrder::GrevlexAlphaLast,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignsArg {
    /// 1, -3, 5, -7, ...
    Alternating,
    /// -1, 3, -5, 7, ...
    Flipped,
    /// 1, 3, 5, 7, ...
    Positive,
}

impl From<SignsArg> for LambdaSigns {
    fn from(s: SignsArg) -> Self {
        match s {
            SignsArg::Alternating => LambdaSigns::Alternating,
            SignsArg::Flipped => LambdaSigns::Flipped,
            SignsArg::Positive => LambdaSigns::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BuiltinIdeal {
    /// alpha - lambda_{g+m}, beta - 2, gamma, and every delta.
    Point,
    /// beta - 2, gamma, every delta, and the ladder product Q_{g,n}(alpha).
    Family,
}

fn parse_surface(s: &str) -> Result<MeridionalSurface, String> {
    let (g, n) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `g,n`, got `{s}`"))?;
    let g = g.trim().parse().map_err(|_| format!("bad genus in `{s}`"))?;
    let n = n.trim().parse().map_err(|_| format!("bad count in `{s}`"))?;
    Ok(MeridionalSurface { g, n })
}

#[derive(Parser)]
#[command(name = "modcoh", version, about = "relation and spectrum toolkit for the marked-surface operator algebra")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The degree-2(g+m) vanishing relation (g+m)! xi_{g+m}.
    Mumford {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// Emit xi_{g+m} itself, without the (g+m)! normalization.
        #[arg(long)]
        raw: bool,
        /// Replace gamma by the psi-pair sum for the given genus.
        #[arg(long)]
        expand_gamma: bool,
    },
    /// One term of the recursion xi_0, xi_1, xi_2, ...
    Xi {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Surface-operator eigenvalue table for one of the spaces V, U, W2.
    Spectrum {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
    },
    /// Primitive-part dimensions and the weighted total 4^g.
    Lefschetz {
        #[arg(long)]
        g: usize,
    },
    /// Solve for an SU(2) tuple and report the local dimension and traces.
    Repvariety {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// Relator target sign: +1 or -1.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        epsilon: i32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the pushforward series of the first direct image with its closed form.
    GrrCheck {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        m: u32,
        /// Series truncation; defaults to 2(g+m)+4.
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Residual tolerance for the pass verdict.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Groebner basis, quotient dimension, and alpha spectrum of an ideal.
    Quotient {
        /// Generator file: one polynomial per line, `#` comments.
        #[arg(long)]
        ideal: Option<PathBuf>,
        /// Built-in ideal family instead of a file.
        #[arg(long, value_enum)]
        builtin: Option<BuiltinIdeal>,
        /// Genus for a built-in ideal.
        #[arg(long)]
        g: Option<usize>,
        /// Number of delta generators; inferred from the file when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
        /// Sign convention for the eigenvalue ladder of a built-in ideal.
        #[arg(long, value_enum, default_value_t = SignsArg::Alternating)]
        lambda_signs: SignsArg,
    },
    /// Graded dimensions of the annular invariant of the n-strand braid closure.
    Ahi {
        #[arg(long)]
        n: usize,
    },
    /// Minimal 2g+n over meridional surfaces and the vanishing range it certifies.
    Thurston {
        /// A surface as `g,n`; repeat the flag for several candidates.
        #[arg(long = "surface", value_parser = parse_surface, required = true)]
        surfaces: Vec<MeridionalSurface>,
    },
}

const REF_MUMFORD: &str = "vanishing relation from Chern classes beyond the index-bundle rank";
const REF_XI: &str = "recursion for the coefficients of the parabolic index series";
const REF_LEFSCHETZ: &str = "primitive decomposition of the exterior algebra of a symplectic 2g-space";
const REF_REPVAR: &str = "conjugacy classes of SU(2) tuples with the surface relator and traceless punctures";
const REF_GRR: &str = "pushforward Chern series of the first direct image against its closed form";
const REF_QUOTIENT: &str = "alpha action on the finite-dimensional quotient ring";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NonConvergence(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: &Cli) -> modcoh::Result<()> {
    match &cli.command {
        Cmd::Mumford { g, n, raw, expand_gamma } => cmd_mumford(cli.format, *g, *n, *raw, *expand_gamma),
        Cmd::Xi { k, n } => cmd_xi(cli.format, *k, *n),
        Cmd::Spectrum { space, g, n } => cmd_spectrum(cli.format, (*space).into(), *g, *n),
        Cmd::Lefschetz { g } => cmd_lefschetz(cli.format, *g),
        Cmd::Repvariety { g, n, epsilon, seed } => cmd_repvariety(cli.format, *g, *n, *epsilon, *seed),
        Cmd::GrrCheck { g, m, truncation, samples, tol } => {
            cmd_grr_check(cli.format, *g, *m, *truncation, *samples, *tol)
        }
        Cmd::Quotient { ideal, builtin, g, n, order, lambda_signs } => cmd_quotient(
            cli.format,
            ideal.as_deref(),
            *builtin,
            *g,
            *n,
            (*order).into(),
            (*lambda_signs).into(),
        ),
        Cmd::Ahi { n } => cmd_ahi(cli.format, *n),
        Cmd::Thurston { surfaces } => cmd_thurston(cli.format, surfaces),
    }
}

/// Readable form of a polynomial: terms by descending degree, coefficients
/// folded into the sign, unit coefficients dropped. The result can be fed
/// back to the parser.
fn poly_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let table = p.table().clone();
    let mut terms: Vec<(&Monomial, &GaussRat)> = p.terms().collect();
    terms.sort_by(|a, b| {
        let da = a.0.degree(&table);
        let db = b.0.degree(&table);
        db.cmp(&da).then_with(|| b.0.exps().cmp(a.0.exps()))
    });
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let cs = c.coeff_to_string();
        // complex coefficients arrive parenthesized, so a leading '-' is a real sign
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, cs),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if mag != "1" || m.is_unit() {
            factors.push(mag);
        }
        for (idx, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = &table.gen_info(idx).name;
            factors.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
        }
        out.push_str(&factors.join(" * "));
    }
    out
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn cmd_mumford(format: Format, g: usize, n: usize, raw: bool, expand_gamma: bool) -> modcoh::Result<()> {
    let normalized = !raw;
    let mut rel = mumford::mumford_relation::<GaussRat>(g, n, normalized)?;
    if expand_gamma {
        rel = rel.reindex(&GeneratorTable::moduli(g, n))?.expand_gamma()?;
    }
    let report = mumford::relation_report::<GaussRat>(g, n, normalized)?;
    let text = poly_text(&rel);
    match format {
        Format::Text => {
            println!(
                "g = {g}, n = {n}, degree = {}, terms = {}",
                report.degree,
                rel.num_terms()
            );
            println!("leading coefficient = {}", report.leading_coeff);
            println!("{text}");
        }
        Format::Json => print_json(&json!({
            "paper_ref": REF_MUMFORD,
            "g": g,
            "n": n,
            "degree": report.degree,
            "leading_coeff": report.leading_coeff,
            "num_terms": rel.num_terms(),
            "normalized": normalized,
            "gamma_expanded": expand_gamma,
            "polynomial": text,
        })),
        Format::Tsv => {
            println!("g\tn\tdegree\tleading_coeff\tnum_terms\tpolynomial");
            println!(
                "{g}\t{n}\t{}\t{}\t{}\t{text}",
                report.degree,
                report.leading_coeff,
                rel.num_terms()
            );
        }
    }
    Ok(())
}

fn cmd_xi(format: Format, k: usize, n: usize) -> modcoh::Result<()> {
    let p = mumford::xi::<GaussRat>(k, n)?;
    let degree = p.homogeneous_degree()?;
    let alpha_coeff = p
        .coeff_of_power(GeneratorTable::ALPHA, k as u32)
        .coeff_to_string();
    let text = poly_text(&p);
    match format {
        Format::Text => {
            let deg = degree.map_or("undefined".to_string(), |d| d.to_string());
            println!("k = {k}, n = {n}, degree = {deg}, terms = {}", p.num_terms());
            println!("[alpha^{k}] = {alpha_coeff}");
            println!("{text}");
        }
        Format::Json => print_json(&json!({
            "paper_ref": REF_XI,
            "k": k,
            "n": n,
            "degree": degree,
            "alpha_power_coeff": alpha_coeff,
            "num_terms": p.num_terms(),
            "polynomial": text,
        })),
        Format::Tsv => {
            println!("k\tn\tdegree\talpha_power_coeff\tnum_terms\tpolynomial");
            let deg = degree.map_or(String::new(), |d| d.to_string());
            println!("{k}\t{n}\t{deg}\t{alpha_coeff}\t{}\t{text}", p.num_terms());
        }
    }
    Ok(())
}

fn cmd_spectrum(format: Format, space: floer::Space, g: usize, n: usize) -> modcoh::Result<()> {
    let report = floer::spectrum(space, g, n)?;
    emit_spectrum_rows(format, &report)
}

fn cmd_ahi(format: Format, n: usize) -> modcoh::Result<()> {
    let report = floer::ahi_report(n)?;
    emit_spectrum_rows(format, &report)
}

fn emit_spectrum_rows(format: Format, report: &floer::SpectrumReport) -> modcoh::Result<()> {
    match format {
        Format::Text => {
            println!(
                "space = {}, g = {}, n = {}",
                report.space.label(),
                report.g,
                report.n
            );
            for row in &report.rows {
                println!("{:>6}  {:>12}  {}", row.value, row.multiplicity, row.note);
            }
        }
        Format::Json => print_json(&serde_json::to_value(report).expect("spectrum report")),
        Format::Tsv => {
            println!("value\tmultiplicity\tnote");
            for row in &report.rows {
                println!("{}\t{}\t{}", row.value, row.multiplicity, row.note);
            }
        }
    }
    Ok(())
}

fn cmd_lefschetz(format: Format, g: usize) -> modcoh::Result<()> {
    if g > 30 {
        return Err(Error::Precondition(format!(
            "the dimension table is capped at g = 30 (got {g})"
        )));
    }
    let mut rows = Vec::new();
    let mut weighted: u64 = 0;
    for k in 0..=g {
        let dim = lefschetz::primitive_dimension(g, k) as u64;
        let ladder = (g - k + 1) as u64;
        weighted += dim * ladder;
        rows.push((k, dim, ladder, dim * ladder));
    }
    let expected: u64 = 1 << (2 * g);
    match format {
        Format::Text => {
            println!("g = {g}, weighted total = {weighted}, expected 4^g = {expected}");
            for (k, dim, ladder, contribution) in &rows {
                println!("k = {k}: primitive dim = {dim}, ladder length = {ladder}, contribution = {contribution}");
            }
        }
        Format::Json => {
            let json_rows: Vec<_> = rows
                .iter()
                .map(|(k, dim, ladder, contribution)| {
                    json!({
                        "k": k,
                        "primitive_dim": dim,
                        "ladder_length": ladder,
                        "contribution": contribution,
                    })
                })
                .collect();
            print_json(&json!({
                "paper_ref": REF_LEFSCHETZ,
                "g": g,
                "rows": json_rows,
                "weighted_sum": weighted,
                "expected_total": expected,
                "identity_holds": weighted == expected,
            }));
        }
        Format::Tsv => {
            println!("k\tprimitive_dim\tladder_length\tcontribution");
            for (k, dim, ladder, contribution) in &rows {
                println!("{k}\t{dim}\t{ladder}\t{contribution}");
            }
        }
    }
    Ok(())
}

fn cmd_repvariety(format: Format, g: usize, n: usize, epsilon: i32, seed: u64) -> modcoh::Result<()> {
    let (_, report) = repvar::solve(g, n, epsilon, seed)?;
    let expected = repvar::expected_dimension(g, n);
    match format {
        Format::Text => {
            println!("g = {g}, n = {n}, epsilon = {epsilon}, seed = {seed}");
            println!("residual = {:e}", report.residual);
            let qd = report
                .quotient_dim
                .map_or("undefined (even n)".to_string(), |d| d.to_string());
            println!(
                "rank = {}, raw nullity = {}, quotient dim = {qd}, expected 6g+2n-6 = {expected}",
                report.rank, report.raw_nullity
            );
            for (key, value) in &report.traces {
                println!("tr {key} = {value}");
            }
        }
        Format::Json => print_json(&json!({
            "paper_ref": REF_REPVAR,
            "g": g,
            "n": n,
            "epsilon": epsilon,
            "seed": seed,
            "residual": report.residual,
            "rank": report.rank,
            "raw_nullity": report.raw_nullity,
            "quotient_dim": report.quotient_dim,
            "expected_dim": expected,
            "traces": report.traces,
        })),
        Format::Tsv => {
            let mut header = vec![
                "g".to_string(),
                "n".to_string(),
                "epsilon".to_string(),
                "seed".to_string(),
                "residual".to_string(),
                "rank".to_string(),
                "raw_nullity".to_string(),
                "quotient_dim".to_string(),
                "expected_dim".to_string(),
            ];
            header.extend(report.traces.keys().cloned());
            println!("{}", header.join("\t"));
            let mut row = vec![
                g.to_string(),
                n.to_string(),
                epsilon.to_string(),
                seed.to_string(),
                format!("{:e}", report.residual),
                report.rank.to_string(),
                report.raw_nullity.to_string(),
                report.quotient_dim.map_or(String::new(), |d| d.to_string()),
                expected.to_string(),
            ];
            row.extend(report.traces.values().map(|v| v.to_string()));
            println!("{}", row.join("\t"));
        }
    }
    Ok(())
}

fn cmd_grr_check(
    format: Format,
    g: usize,
    m: u32,
    truncation: Option<usize>,
    samples: usize,
    tol: f64,
) -> modcoh::Result<()> {
    let trunc = truncation.unwrap_or_else(|| fiber::default_truncation(g, m));
    let report = fiber::r1_closed_form_check(g, m, trunc, samples)?;
    let pass = report.max_residual < tol;
    match format {
        Format::Text => {
            println!(
                "g = {g}, m = {m}, truncation = {trunc}, samples = {}, rank = {}",
                report.samples, report.rank_r1
            );
            println!("max residual = {:e} (tolerance {:e})", report.max_residual, tol);
            println!("{}", if pass { "pass" } else { "FAIL" });
        }
        Format::Json => print_json(&json!({
            "paper_ref": REF_GRR,
            "g": g,
            "m": m,
            "truncation": trunc,
            "rank_r1": report.rank_r1,
            "samples": report.samples,
            "max_residual": report.max_residual,
            "tolerance": tol,
            "pass": pass,
        })),
        Format::Tsv => {
            println!("g\tm\ttruncation\trank_r1\tsamples\tmax_residual\ttolerance\tpass");
            println!(
                "{g}\t{m}\t{trunc}\t{}\t{}\t{:e}\t{tol:e}\t{pass}",
                report.rank_r1, report.samples, report.max_residual
            );
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Error::NonConvergence(format!(
            "max residual {:e} exceeds tolerance {:e}",
            report.max_residual, tol
        )))
    }
}

/// Pull the delta count out of generator text when no flag is given.
fn infer_delta_count(lines: &[String]) -> usize {
    let mut max = 0usize;
    for line in lines {
        for (pos, _) in line.match_indices("delta_") {
            let digits: String = line[pos + 6..]
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            if let Ok(i) = digits.parse::<usize>() {
                max = max.max(i);
            }
        }
    }
    max
}

fn builtin_generators(
    kind: BuiltinIdeal,
    g: Option<usize>,
    n: Option<usize>,
    signs: LambdaSigns,
) -> modcoh::Result<Vec<Poly>> {
    let g = g.ok_or_else(|| Error::Precondition("--builtin requires --g".into()))?;
    let n = n.ok_or_else(|| Error::Precondition("--builtin requires --n".into()))?;
    let spectral = SpectralPolynomials { signs, ..Default::default() };
    let table = GeneratorTable::commutative(n);
    let two = GradedPoly::constant(&table, GaussRat::from_int(2));
    let mut gens = vec![
        GradedPoly::generator(&table, GeneratorTable::BETA)?.checked_sub(&two)?,
        GradedPoly::generator(&table, GeneratorTable::GAMMA)?,
    ];
    for i in 1..=n {
        gens.push(GradedPoly::generator(&table, table.delta(i)?)?);
    }
    match kind {
        BuiltinIdeal::Point => {
            if n % 2 == 0 {
                return Err(Error::Precondition(format!(
                    "the built-in ideals need odd n, got {n}"
                )));
            }
            let count = g + (n - 1) / 2;
            if count == 0 {
                return Err(Error::Precondition(
                    "the point ideal needs g + (n-1)/2 >= 1".into(),
                ));
            }
            let lambda = spectral.lambda(count as u32);
            let alpha = GradedPoly::generator(&table, GeneratorTable::ALPHA)?;
            gens.push(alpha.checked_sub(&GradedPoly::constant(&table, GaussRat::from_int(lambda)))?);
        }
        BuiltinIdeal::Family => {
            gens.push(spectral.q_poly::<GaussRat>(&table, g as i64, n)?);
        }
    }
    Ok(gens)
}

fn cmd_quotient(
    format: Format,
    ideal_path: Option<&std::path::Path>,
    builtin: Option<BuiltinIdeal>,
    g: Option<usize>,
    n: Option<usize>,
    order: MonomialOrder,
    signs: LambdaSigns,
) -> modcoh::Result<()> {
    let gens: Vec<Poly> = match (ideal_path, builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let lines: Vec<String> = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                .filter(|l| !l.is_empty())
                .collect();
            if lines.is_empty() {
                return Err(Error::Precondition(format!(
                    "no generators found in {}",
                    path.display()
                )));
            }
            let n = n.unwrap_or_else(|| infer_delta_count(&lines));
            let table = GeneratorTable::commutative(n);
            lines
                .iter()
                .map(|l| GradedPoly::parse(&table, l))
                .collect::<modcoh::Result<Vec<_>>>()?
        }
        (None, Some(kind)) => builtin_generators(kind, g, n, signs)?,
        _ => {
            return Err(Error::Precondition(
                "pass exactly one of --ideal and --builtin".into(),
            ))
        }
    };
    let table: Arc<GeneratorTable> = gens[0].table().clone();
    let ideal = CommIdeal::new(gens, order)?;
    let quotient = groebner::groebner(&ideal)?;
    let spectrum = quotient.alpha_spectrum()?;
    let standard = quotient
        .standard_monomial_texts()
        .unwrap_or_default();
    let basis_texts: Vec<String> = quotient.basis().iter().map(poly_text).collect();
    let order_name = match order {
        MonomialOrder::GrevlexAlphaLast => "grevlex",
        MonomialOrder::Lex => "lex",
    };
    match format {
        Format::Text => {
            println!(
                "variables = {}, order = {order_name}, quotient dimension = {}, exact = {}",
                table.len(),
                spectrum.dimension,
                spectrum.exact
            );
            println!("standard monomials: {}", standard.join(", "));
            println!("groebner basis:");
            for b in &basis_texts {
                println!("  {b}");
            }
            println!("alpha spectrum:");
            for e in &spectrum.entries {
                println!(
                    "  value = {}, algebraic = {}, geometric = {}",
                    e.value, e.alg_mult, e.geo_mult
                );
            }
        }
        Format::Json => {
            let entries: Vec<_> = spectrum
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "value": e.value,
                        "alg_mult": e.alg_mult,
                        "geo_mult": e.geo_mult,
                    })
                })
                .collect();
            print_json(&json!({
                "paper_ref": REF_QUOTIENT,
                "order": order_name,
                "dimension": spectrum.dimension,
                "exact": spectrum.exact,
                "entries": entries,
                "standard_monomials": standard,
                "groebner_basis": basis_texts,
            }));
        }
        Format::Tsv => {
            println!("value\talg_mult\tgeo_mult");
            for e in &spectrum.entries {
                println!("{}\t{}\t{}", e.value, e.alg_mult, e.geo_mult);
            }
        }
    }
    Ok(())
}

fn cmd_thurston(format: Format, surfaces: &[MeridionalSurface]) -> modcoh::Result<()> {
    let report = floer::thurston_bound(surfaces)?;
    match format {
        Format::Text => {
            println!(
                "bound = {} (attained by genus {}, intersections {})",
                report.bound, report.attained_by.g, report.attained_by.n
            );
            println!("{}", report.vanishing);
            println!("{}", report.nonvanishing);
        }
        Format::Json => print_json(&serde_json::to_value(&report).expect("thurston report")),
        Format::Tsv => {
            println!("bound\tattained_g\tattained_n\tvanishing\tnonvanishing");
            println!(
                "{}\t{}\t{}\t{}\t{}",
                report.bound,
                report.attained_by.g,
                report.attained_by.n,
                report.vanishing,
                report.nonvanishing
            );
        }
    }
    Ok(())
}
