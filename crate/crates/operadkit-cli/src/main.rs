//! Command-line front end.  Exit codes: 0 when every requested check passes,
//! 1 when a mathematical check fails, 2 on bad input or unknown names.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use operadkit::algebras::{
    algebra_to_json, apply_functor, check_identities, check_type, free_lie, free_sdiass,
    free_sleib, free_sperm, multilinear_rank, parse_algebra, parse_binding, quotient_construction,
    samples, Algebra, Binding, FreeAlgebra,
};
use operadkit::dsl::{parse_genmap, print_presentation};
use operadkit::expansion::{arity_ceiling, hadamard_dims, quotient_dims, shape_basis_report};
use operadkit::koszul::{dual, evidence_ceiling, koszul_evidence};
use operadkit::presentations::{
    catalog, catalog_get, diagram_arrow, match_catalog, morphism_check, GenMap, DIAGRAM_ARROWS,
    DIAGRAM_SQUARES,
};
use operadkit::series::Egf;
use operadkit::verify::{verification_report, Status};
use operadkit::{Error, Result};

#[derive(Parser)]
#[command(
    name = "operadkit",
    version,
    about = "Exact-arithmetic workbench for binary quadratic operads over the rationals"
)]
struct Cli {
    /// Override the saturation arity ceiling (higher arities get expensive).
    #[arg(long, global = true)]
    max_arity: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in presentations with their arity-3 splits and duals.
    Catalog,
    /// Print the Koszul dual of a catalog presentation.
    Dual { name: String },
    /// Print quotient dimensions computed by relation saturation.
    Dims {
        name: String,
        /// Deepest arity to compute (default 5, capped by the ceiling).
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Print dimension tables from a closed-form exponential series.
    Series {
        name: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Print the compositional inverse table instead.
        #[arg(long)]
        invert: bool,
    },
    /// Test the dimension-series inversion identity against the dual.
    KoszulEvidence {
        name: String,
        /// Deepest arity to saturate (default depends on the alphabet).
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Check that a generator map carries relations into relations.
    Morphism {
        source: String,
        target: String,
        /// Map file; defaults to the catalog arrow between the two names.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Check every catalog arrow and the commuting squares.
    Diagram,
    /// Pointwise products of two quotient dimension tables.
    Hadamard {
        left: String,
        right: String,
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Per-shape spanning ranks of the quotient at one arity.
    WhiteCondition {
        name: String,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
    /// Check a structure-constant table (JSON) against a named law set.
    Check {
        /// Path to the algebra file, or - for stdin.
        file: PathBuf,
        #[arg(long = "type")]
        type_name: String,
        /// Rename generators to operation names, e.g. m=mul,br=bracket.
        #[arg(long)]
        bind: Option<String>,
    },
    /// Build a truncated free algebra: lie, sleib, sperm, sdiass, zinbiel, diass.
    Free {
        kind: String,
        #[arg(long, default_value_t = 2)]
        gens: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Verify the construction satisfies its own laws.
        #[arg(long)]
        check: bool,
        /// Print the table as JSON instead of a summary.
        #[arg(long)]
        emit: bool,
        /// Rank of each multilinear component on the first n generators.
        #[arg(long)]
        ranks: Option<usize>,
    },
    /// Add derived operations to an algebra read from a file.
    Functor {
        name: String,
        /// Path to the algebra file, or - for stdin.
        file: PathBuf,
        /// Rename the operations the construction reads from the input.
        #[arg(long)]
        bind: Option<String>,
        /// Check the result against a named law set.
        #[arg(long)]
        check: Option<String>,
        /// Generator-to-operation renames for the law check.
        #[arg(long)]
        check_bind: Option<String>,
        #[arg(long)]
        emit: bool,
    },
    /// Quotient an algebra by an operation-generated ideal.
    Quotient {
        /// Path to the algebra file, or - for stdin.
        file: PathBuf,
        /// One of: abelianize, squares, leibniz-defect, diperm.
        #[arg(long)]
        construction: String,
        /// Rename the operations the construction reads from the input.
        #[arg(long)]
        bind: Option<String>,
        /// Check the quotient against a named law set.
        #[arg(long)]
        check: Option<String>,
        /// Generator-to-operation renames for the law check.
        #[arg(long)]
        check_bind: Option<String>,
        #[arg(long)]
        emit: bool,
    },
    /// Recompute every verifiable claim and print one line per check.
    VerifyPaper,
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes instead of panicking
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(n) = cli.max_arity {
        std::env::set_var("OPERADKIT_MAX_ARITY", n.to_string());
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn binding(spec: &Option<String>) -> Result<Binding> {
    match spec {
        Some(s) => parse_binding(s),
        None => Ok(Binding::new()),
    }
}

fn dual_label(p: &operadkit::presentations::Presentation) -> Result<String> {
    let d = dual(p)?;
    Ok(match match_catalog(&d) {
        Some(hit) => hit.name.clone(),
        None => "(not in catalog)".to_string(),
    })
}

fn report_laws(alg: &Algebra, type_name: &str, bind: &Binding) -> Result<bool> {
    let p = check_type(type_name)?;
    let report = check_identities(alg, p, bind)?;
    if report.ok {
        println!("PASS  {} laws hold on all basis triples", type_name);
        Ok(true)
    } else {
        println!("FAIL  {} laws are violated:", type_name);
        for f in &report.failures {
            println!("      {f}");
        }
        Ok(false)
    }
}

fn free_by_kind(kind: &str, gens: usize, degree: usize) -> Result<(FreeAlgebra, &'static str)> {
    match kind {
        "lie" => Ok((free_lie(gens, degree)?, "Lie")),
        "sleib" => Ok((free_sleib(gens, degree)?, "sLeib")),
        "sperm" => Ok((free_sperm(gens, degree)?, "sPerm")),
        "sdiass" => Ok((free_sdiass(gens, degree)?, "sDiAss")),
        "zinbiel" => Ok((samples::free_zinbiel(gens, degree)?, "rZinb")),
        "diass" => Ok((samples::free_diass(gens, degree)?, "DiAss")),
        other => Err(Error::UnknownCatalog {
            name: other.to_string(),
            available: "lie, sleib, sperm, sdiass, zinbiel, diass".to_string(),
        }),
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Catalog => {
            for p in catalog() {
                let gens: Vec<String> = p
                    .alphabet
                    .generators()
                    .iter()
                    .map(|g| format!("{} ({})", g.name, g.symmetry.keyword()))
                    .collect();
                println!(
                    "{}: gens {}; arity-3 split {} = {} + {}; dual {}",
                    p.name,
                    gens.join(", "),
                    p.ambient_dim3(),
                    p.relations.dim(),
                    p.quotient_dim3(),
                    dual_label(p)?
                );
            }
            Ok(true)
        }
        Command::Dual { name } => {
            let p = catalog_get(&name)?;
            let d = dual(p)?;
            print!("{}", print_presentation(&d));
            match match_catalog(&d) {
                Some(hit) => println!("matches catalog entry: {}", hit.name),
                None => println!("matches no catalog entry"),
            }
            Ok(true)
        }
        Command::Dims { name, arity } => {
            let p = catalog_get(&name)?;
            let n = arity.unwrap_or_else(|| arity_ceiling(p.alphabet.dim()).min(5));
            let dims = quotient_dims(p, n)?;
            for (i, d) in dims.iter().enumerate() {
                println!("{}: {}", i + 1, d);
            }
            Ok(true)
        }
        Command::Series {
            name,
            terms,
            invert,
        } => {
            let f = Egf::named(&name, terms)?;
            let table = if invert { f.invert()? } else { f };
            for (i, d) in table.integer_dims()?.iter().enumerate() {
                println!("{}: {}", i + 1, d);
            }
            Ok(true)
        }
        Command::KoszulEvidence { name, terms } => {
            let p = catalog_get(&name)?;
            let n = terms.unwrap_or_else(|| {
                evidence_ceiling(p.alphabet.dim()).min(arity_ceiling(p.alphabet.dim()))
            });
            let report = koszul_evidence(p, n)?;
            println!("presentation: {}", report.name);
            println!("dual:         {}", report.dual_name);
            println!("dimensions:   {:?}", report.primal_dims);
            println!("dual dims:    {:?}", report.dual_dims);
            match report.first_defect {
                None => {
                    println!("inversion identity holds through order {n}");
                    Ok(true)
                }
                Some(k) => {
                    println!("inversion identity FAILS at order {k}");
                    Ok(false)
                }
            }
        }
        Command::Morphism {
            source,
            target,
            map,
        } => {
            let src = catalog_get(&source)?;
            let tgt = catalog_get(&target)?;
            let genmap = match map {
                Some(path) => {
                    let parsed = parse_genmap(&read_input(&path)?)?;
                    GenMap::from_parsed(&parsed, src, tgt)?
                }
                None => diagram_arrow(&source, &target)?,
            };
            print!("{}", genmap.describe());
            let report = morphism_check(&genmap, src, tgt);
            if report.ok {
                println!("ok: relations map into relations");
                Ok(true)
            } else {
                println!("FAIL: {}", report.witness.unwrap_or_default());
                Ok(false)
            }
        }
        Command::Diagram => {
            let mut all_ok = true;
            for (src, tgt, _) in DIAGRAM_ARROWS {
                let map = diagram_arrow(src, tgt)?;
                let report = morphism_check(&map, catalog_get(src)?, catalog_get(tgt)?);
                let verdict = if report.ok { "ok " } else { "FAIL" };
                all_ok &= report.ok;
                println!("{verdict}  arrow {src} -> {tgt}");
            }
            for (a, b, c, d) in DIAGRAM_SQUARES {
                let top = diagram_arrow(a, b)?.then(&diagram_arrow(b, d)?)?;
                let left = diagram_arrow(a, c)?.then(&diagram_arrow(c, d)?)?;
                let ok = top.same_mapping(&left);
                all_ok &= ok;
                let verdict = if ok { "ok " } else { "FAIL" };
                println!("{verdict}  square {a} -> {b},{c} -> {d}");
            }
            Ok(all_ok)
        }
        Command::Hadamard { left, right, arity } => {
            let pl = catalog_get(&left)?;
            let pr = catalog_get(&right)?;
            let n = arity.unwrap_or_else(|| {
                arity_ceiling(pl.alphabet.dim())
                    .min(arity_ceiling(pr.alphabet.dim()))
                    .min(5)
            });
            let dims = hadamard_dims(pl, pr, n)?;
            for (i, d) in dims.iter().enumerate() {
                println!("{}: {}", i + 1, d);
            }
            Ok(true)
        }
        Command::WhiteCondition { name, arity } => {
            let p = catalog_get(&name)?;
            let report = shape_basis_report(p, arity)?;
            println!("quotient dimension at arity {}: {}", arity, report.quotient_dim);
            for s in &report.shapes {
                println!("shape {}: rank {}", s.shape, s.rank);
            }
            if report.pass {
                println!("every shape spans the quotient");
            } else {
                println!("FAIL: some shape does not span the quotient");
            }
            Ok(report.pass)
        }
        Command::Check {
            file,
            type_name,
            bind,
        } => {
            let alg = parse_algebra(&read_input(&file)?)?;
            report_laws(&alg, &type_name, &binding(&bind)?)
        }
        Command::Free {
            kind,
            gens,
            degree,
            check,
            emit,
            ranks,
        } => {
            let (free, type_name) = free_by_kind(&kind, gens, degree)?;
            if emit {
                println!("{}", algebra_to_json(&free.algebra));
                return Ok(true);
            }
            println!(
                "dimension {} on {} generators through degree {}",
                free.algebra.dim, gens, degree
            );
            let mut ok = true;
            if check {
                ok &= report_laws(&free.algebra, type_name, &Binding::new())?;
            }
            if let Some(n) = ranks {
                if n > gens {
                    return Err(Error::DimensionMismatch(format!(
                        "rank check needs {n} generators, the algebra has {gens}"
                    )));
                }
                let p = check_type(type_name)?;
                for m in 1..=n {
                    let vectors: Vec<_> = free.generators[..m]
                        .iter()
                        .map(|&g| free.algebra.unit_vector(g))
                        .collect();
                    let rank = multilinear_rank(&free.algebra, p, &Binding::new(), &vectors)?;
                    println!("multilinear rank at arity {m}: {rank}");
                }
            }
            Ok(ok)
        }
        Command::Functor {
            name,
            file,
            bind,
            check,
            check_bind,
            emit,
        } => {
            let alg = parse_algebra(&read_input(&file)?)?;
            let out = apply_functor(&alg, &name, &binding(&bind)?)?;
            if emit {
                println!("{}", algebra_to_json(&out));
                return Ok(true);
            }
            let ops: Vec<&str> = out.ops.keys().map(String::as_str).collect();
            println!("operations: {}", ops.join(", "));
            match check {
                Some(ty) => report_laws(&out, &ty, &binding(&check_bind)?),
                None => Ok(true),
            }
        }
        Command::Quotient {
            file,
            construction,
            bind,
            check,
            check_bind,
            emit,
        } => {
            let alg = parse_algebra(&read_input(&file)?)?;
            let result = quotient_construction(&alg, &construction, &binding(&bind)?)?;
            if emit {
                println!("{}", algebra_to_json(&result.algebra));
                return Ok(true);
            }
            println!(
                "input dimension {}, ideal dimension {}, quotient dimension {}",
                alg.dim, result.ideal_dim, result.algebra.dim
            );
            match check {
                Some(ty) => report_laws(&result.algebra, &ty, &binding(&check_bind)?),
                None => Ok(true),
            }
        }
        Command::VerifyPaper => {
            // one line per recomputed claim, fixed order

            let report = verification_report();
            let mut passed = 0usize;
            let mut failed = 0usize;
            let mut skipped = 0usize;
            for item in &report {
                println!("{}", item.render());
                match item.status {
                    Status::Pass => passed += 1,
                    Status::Fail(_) => failed += 1,
                    Status::Skip(_) => skipped += 1,
                }
            }
            println!(
                "{} checks: {} passed, {} failed, {} skipped",
                report.len(),
                passed,
                failed,
                skipped
            );
            Ok(failed == 0)
        }
    }
}
