//! Command-line front end: line existence (global, at a place, or across
//! all places up to a bound), cohomology reports, Hasse verdicts with JSON
//! certificates, counter-example synthesis, and the degree-density counts.
//!
//! Exit codes: 0 success, 1 usage error, 2 honest Unsupported (so scripted
//! sweeps can tell "undecided" from "decided").

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hasse_lines::cohomology::{h1_total, hasse_principle_predicted, Prediction};
use hasse_lines::config::Config;
use hasse_lines::construct::construct_for;
use hasse_lines::counting::{erdos_table, table_to_csv};
use hasse_lines::cyclotomic::CycField;
use hasse_lines::galois::{hasse_verdict, verdict_report, Verdict};
use hasse_lines::hilbert::{
    has_line_locally, has_line_over, hilbert_scheme, lines_explicit, DiagonalSurface,
};
use hasse_lines::local::Place;
use hasse_lines::textio;
use hasse_lines::Error;

#[derive(Parser)]
#[command(
    name = "hasse-lines",
    about = "Exact decisions about lines on diagonal surfaces over Q and cyclotomic fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SurfaceArgs {
    /// degree d >= 3
    #[arg(long)]
    d: u32,
    /// base field: Q or Q(muN)
    #[arg(long)]
    field: String,
    /// four comma-separated coefficients (rationals n/m or polynomials in z)
    #[arg(long)]
    coeffs: String,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert-scheme components and line existence tests
    Lines {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// test at one place: "inf" or a rational prime
        #[arg(long, conflicts_with_all = ["global", "all_local"])]
        at: Option<String>,
        /// test for a line over the base field
        #[arg(long)]
        global: bool,
        /// test all primes up to the bound (plus the real place over Q)
        #[arg(long)]
        all_local: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Full Hasse-principle verdict with certificate
    Verdict {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// witness-prime scan bound
        #[arg(long)]
        scan_bound: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// H^1(k(mu_d)/k, mu_d) triviality and the Hasse-principle prediction
    Cohomology {
        #[arg(long)]
        field: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        json: bool,
    },
    /// Synthesize a certified counter-example surface
    Construct {
        #[arg(long)]
        field: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        json: bool,
    },
    /// Count degrees satisfying the pairwise q != 1 mod p condition
    Count {
        #[arg(long)]
        x: Option<u64>,
        /// comma-separated grid of x values
        #[arg(long)]
        grid: Option<String>,
        /// report the squarefree count as the headline number
        #[arg(long)]
        squarefree: bool,
        /// write the table as CSV to this path
        #[arg(long)]
        csv: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the two worked examples end to end
    Demo,
}

fn load_config() -> Result<Config, Error> {
    match std::env::var("HASSE_LINES_CONFIG") {
        Ok(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::InvalidInput(format!("config {path}: {e}")))?;
            toml::from_str(&text).map_err(|e| Error::InvalidInput(format!("config {path}: {e}")))
        }
        Err(_) => Ok(Config::default()),
    }
}

fn parse_surface(args: &SurfaceArgs) -> Result<DiagonalSurface, Error> {
    let field = textio::parse_field(&args.field)?;
    let coeffs = textio::parse_coeffs(&args.coeffs, &field)?;
    DiagonalSurface::new(args.d, field, coeffs)
}

fn parse_place(s: &str, field: &CycField) -> Result<Place, Error> {
    if s == "inf" || s == "infinity" || s == "real" {
        if !field.is_rational() {
            return Err(Error::InvalidInput(
                "the real place only exists over Q".into(),
            ));
        }
        return Ok(Place::Real);
    }
    let ell: u64 = s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("place must be `inf` or a prime, got `{s}`")))?;
    if !hasse_lines::arith::is_prime_u64(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    Ok(Place::RationalPrime(ell))
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    let cfg = load_config()?;
    match cli.command {
        Command::Lines { surface, at, global, all_local, json } => {
            let s = parse_surface(&surface)?;
            let comps = hilbert_scheme(&s)?;
            if let Some(place_str) = at {
                let place = parse_place(&place_str, &s.field)?;
                let soluble = has_line_locally(&s, &place, &cfg)?;
                if json {
                    println!(
                        "{}",
                        serde_json::json!({
                            "surface": s.describe(),
                            "place": place.describe(),
                            "soluble": soluble,
                        })
                    );
                } else {
                    println!("{}", s.describe());
                    println!("line over the completion at {}: {}", place.describe(), soluble);
                }
                return Ok(0);
            }
            if global {
                let witness = has_line_over(&s, &s.field, &cfg)?;
                if json {
                    let w = witness.as_ref().map(|w| {
                        serde_json::json!({
                            "component": w.component,
                            "cx": textio::format_elt(&w.cx),
                            "cy": textio::format_elt(&w.cy),
                        })
                    });
                    println!(
                        "{}",
                        serde_json::json!({
                            "surface": s.describe(),
                            "global_line": w,
                        })
                    );
                } else {
                    println!("{}", s.describe());
                    match witness {
                        Some(w) => println!(
                            "global line on component {}: cx = {}, cy = {}",
                            w.component,
                            textio::format_elt(&w.cx),
                            textio::format_elt(&w.cy)
                        ),
                        None => println!("no line over the base field"),
                    }
                }
                return Ok(0);
            }
            if let Some(bound) = all_local {
                let mut rows = Vec::new();
                if s.field.is_rational() {
                    let soluble = has_line_locally(&s, &Place::Real, &cfg)?;
                    rows.push(("infinity".to_string(), soluble));
                }
                let mut ell = 1u64;
                loop {
                    ell = next_prime(ell);
                    if ell > bound {
                        break;
                    }
                    let soluble = has_line_locally(&s, &Place::RationalPrime(ell), &cfg)?;
                    rows.push((ell.to_string(), soluble));
                }
                if json {
                    println!(
                        "{}",
                        serde_json::json!({
                            "surface": s.describe(),
                            "places": rows.iter().map(|(p, sol)| serde_json::json!({"place": p, "soluble": sol})).collect::<Vec<_>>(),
                        })
                    );
                } else {
                    println!("{}", s.describe());
                    for (p, soluble) in rows {
                        println!("  {p}: {}", if soluble { "soluble" } else { "INSOLUBLE" });
                    }
                }
                return Ok(0);
            }
            // default: components and the 3d^2 count
            let lines = lines_explicit(&s)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "surface": s.describe(),
                        "components": comps.iter().map(|c| serde_json::json!({
                            "index": c.index,
                            "u": textio::format_elt(&c.u),
                            "v": textio::format_elt(&c.v),
                        })).collect::<Vec<_>>(),
                        "line_count": lines.len(),
                    })
                );
            } else {
                println!("{}", s.describe());
                for c in &comps {
                    println!(
                        "  component {}: x^{} = {} , y^{} = {}",
                        c.index,
                        s.d,
                        textio::format_elt(&c.u),
                        s.d,
                        textio::format_elt(&c.v)
                    );
                }
                println!("  {} lines over the splitting field", lines.len());
            }
            Ok(0)
        }
        Command::Verdict { surface, scan_bound, json } => {
            let s = parse_surface(&surface)?;
            let mut cfg = cfg;
            if let Some(b) = scan_bound {
                cfg.scan_bound = b;
            }
            let verdict = hasse_verdict(&s, &cfg)?;
            let report = verdict_report(&s, &verdict)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("{}", s.describe());
                println!("verdict: {}", report.verdict);
                match &verdict {
                    Verdict::GlobalLine(w) => println!(
                        "  line on component {}: cx = {}, cy = {}",
                        w.component,
                        textio::format_elt(&w.cx),
                        textio::format_elt(&w.cy)
                    ),
                    Verdict::LocalObstruction { place, note } => {
                        println!("  no line over the completion at {}", place.describe());
                        println!("  ({note})");
                    }
                    Verdict::HasseFailure(cert) => {
                        println!(
                            "  splitting group of order {} (|Gal(K0/k)| = {}, lattice index {})",
                            cert.group_order, cert.gal_k0_order, cert.lattice_index
                        );
                        println!("  every conjugacy class fixes a line:");
                        for class in &cert.classes {
                            println!(
                                "    rep (t={}, c={:?}), size {}, fixes line {:?}",
                                class.rep.t, class.rep.c, class.size, class.fixed_line
                            );
                        }
                        println!("  bad places all soluble:");
                        for b in &cert.bad_places {
                            println!("    {}: soluble", b.place);
                        }
                        println!("  no global line:");
                        for c in &cert.components_not_global {
                            println!(
                                "    component {}: radicand {} = {} is not a d-th power in k",
                                c.component, c.failing_radicand, c.value
                            );
                        }
                    }
                    Verdict::Unsupported(reason) => println!("  {reason}"),
                }
            }
            if matches!(verdict, Verdict::Unsupported(_)) {
                Ok(2)
            } else {
                Ok(0)
            }
        }
        Command::Cohomology { field, d, json } => {
            let f = textio::parse_field(&field)?;
            if d < 3 {
                return Err(Error::InvalidInput("d must be at least 3".into()));
            }
            let report = h1_total(&f, d);
            let prediction = hasse_principle_predicted(&f, d);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "h1": report,
                        "prediction": prediction,
                    }))
                    .unwrap()
                );
            } else {
                println!(
                    "H^1(k(mu_{d})/k, mu_{d}) over {}: {}",
                    textio::format_field(&f),
                    if report.overall_trivial { "trivial" } else { "nontrivial" }
                );
                for factor in &report.factors {
                    println!(
                        "  p^n = {}^{}: {}{} ({})",
                        factor.p,
                        factor.n,
                        if factor.trivial { "trivial" } else { "nontrivial" },
                        factor
								.structure
                            .as_ref()
                            .map(|s| format!(" = {s}"))
                            .unwrap_or_default(),
                        factor.reason
                    );
                }
                if let Some(m1) = prediction.minus_one_dth_power {
                    println!("(-1) in k^(*{d}): {m1}");
                }
                match prediction.prediction {
                    Prediction::AlwaysHolds => {
                        println!("prediction: the Hasse principle for lines always holds")
                    }
                    Prediction::CounterexamplesExist => {
                        println!("prediction: counter-examples exist")
                    }
                }
            }
            Ok(0)
        }
        Command::Construct { field, d, json } => {
            let f = textio::parse_field(&field)?;
            let construction = construct_for(&f, d, &cfg)?;
            let report = verdict_report(&construction.surface, &construction.verdict)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "surface": construction.surface.coeffs.iter().map(textio::format_elt).collect::<Vec<_>>(),
                        "route": construction.route,
                        "alpha": textio::format_elt(&construction.alpha),
                        "beta": construction.beta,
                        "beta_certificate": construction.beta_certificate,
                        "verdict": report,
                    }))
                    .unwrap()
                );
            } else {
                println!("{}", construction.surface.describe());
                println!("route: {}", construction.route);
                println!("alpha = {}", textio::format_elt(&construction.alpha));
                println!(
                    "beta = {} (split check at {}, v = {})",
                    construction.beta,
                    construction.beta_certificate.unit_valuation_place,
                    construction.beta_certificate.unit_valuation
                );
                println!("verdict: {}", construction.verdict.name());
            }
            Ok(0)
        }
        Command::Count { x, grid, squarefree, csv, json } => {
            let grid_values: Vec<u64> = if let Some(g) = grid {
                let mut out = Vec::new();
                for part in g.split(',') {
                    out.push(part.trim().parse().map_err(|_| {
                        Error::InvalidInput(format!("bad grid entry `{part}`"))
                    })?);
                }
                out
            } else if let Some(x) = x {
                vec![x]
            } else {
                return Err(Error::InvalidInput("need --x or --grid".into()));
            };
            let rows = erdos_table(&grid_values, &cfg)?;
            if let Some(path) = csv {
                std::fs::write(&path, table_to_csv(&rows))
                    .map_err(|e| Error::InvalidInput(format!("writing {path}: {e}")))?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else if rows.len() == 1 {
                let r = &rows[0];
                if squarefree {
                    println!("{}", r.d_squarefree);
                } else {
                    println!("{}", r.d_all);
                }
            } else {
                print!("{}", table_to_csv(&rows));
            }
            Ok(0)
        }
        Command::Demo => demo(&cfg),
    }
}

fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if hasse_lines::arith::is_prime_u64(c) {
            return c;
        }
        c += 1;
    }
}

/// The two worked examples, end to end, with certificates.
fn demo(cfg: &Config) -> Result<u8, Error> {
    println!("=== even degree: x0^4 + 4 x1^4 - p^2 x2^4 - (2p)^2 x3^4 over Q, p = 17 ===");
    let q = CycField::rationals();
    let prediction = hasse_principle_predicted(&q, 4);
    println!(
        "H^1(Q(mu_4)/Q, mu_4) nontrivial: {}; prediction: {:?}",
        !prediction.h1.overall_trivial,
        prediction.prediction
    );
    let p = 17i64;
    let surface = DiagonalSurface::new(
        4,
        q.clone(),
        [
            q.from_integer(1),
            q.from_integer(4),
            q.from_integer(-p * p),
            q.from_integer(-4 * p * p),
        ],
    )?;
    println!("{}", surface.describe());
    for ell in [2u64, 3, 5, 17] {
        let ok = has_line_locally(&surface, &Place::RationalPrime(ell), cfg)?;
        println!("  line over Q_{ell}: {ok}");
    }
    println!(
        "  line over R: {}",
        has_line_locally(&surface, &Place::Real, cfg)?
    );
    let verdict = hasse_verdict(&surface, cfg)?;
    println!("verdict: {}", verdict.name());
    if let Verdict::HasseFailure(cert) = &verdict {
        println!(
            "  splitting group order {}, {} conjugacy classes, each fixing a line",
            cert.group_order,
            cert.classes.len()
        );
    }
    let mut exit = 0u8;
    if matches!(verdict, Verdict::Unsupported(_)) {
        exit = 2;
    }

    println!();
    println!("=== odd degree: d = 21 over Q(mu_3) ===");
    let k3 = CycField::new(3);
    let c = construct_for(&k3, 21, cfg)?;
    println!("representative alpha = {}", textio::format_elt(&c.alpha));
    println!(
        "beta = {} with (1)-(4) verified: coprime {}, v = {} at {}, q-th power checks {}, alpha-power checks {}",
        c.beta,
        c.beta_certificate.coprime,
        c.beta_certificate.unit_valuation,
        c.beta_certificate.unit_valuation_place,
        c.beta_certificate.qth_power_at.iter().all(|(_, ok)| *ok),
        c.beta_certificate.alpha_power_at.iter().all(|(_, ok)| *ok),
    );
    println!("{}", c.surface.describe());
    println!("verdict: {}", c.verdict.name());
    if matches!(c.verdict, Verdict::Unsupported(_)) {
        exit = 2;
    }
    Ok(exit)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(Error::InvalidInput(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(Error::BudgetExceeded(msg)) | Err(Error::PrecisionExceeded(msg)) => {
            eprintln!("unsupported: {msg}");
            ExitCode::from(2)
        }
        Err(Error::SearchExhausted(msg)) => {
            eprintln!("unsupported: search exhausted: {msg}");
            ExitCode::from(2)
        }
        Err(Error::NotApplicable(msg)) => {
            eprintln!("not applicable: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
