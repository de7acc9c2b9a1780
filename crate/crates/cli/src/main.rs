//! `unitgrp`: which finitely generated abelian groups are unit groups.
//!
//! Exit codes: 0 realizable / PASS, 1 not realizable / FAIL / odd order,
//! 2 input error, 3 verification budget exceeded.

mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unitgrp::absgroup::{groups_up_to, parse_group, standard_decomposition};
use unitgrp::classify::{build_m0t, build_mt, build_witness, decide, verify_witness, witness_order, ClassifyError};
use unitgrp::cycring::{self, CycError};
use unitgrp::numt::cyclotomic_poly;
use unitgrp::{Class, FGAbelianGroup, ReducedMode, DEFAULT_BUDGET};

/// Largest order `catalog` accepts.
const MAX_CATALOG_ORDER: u64 = 10_000;

const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "unitgrp", version, about = "Unit groups of integral domains, torsion-free and reduced rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Root-of-unity candidates a witness check may enumerate.
    #[arg(long, global = true, env = "UNITGRP_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a group is the unit group of a ring of a class.
    Classify {
        /// Group, e.g. "C2 x C8 x C5 x Z^2".
        group: String,
        /// domain0 | domainp | domain-int | torsion-free | reduced
        #[arg(long)]
        class: String,
        /// With --class reduced: only characteristic-zero rings.
        #[arg(long, conflicts_with = "positive_char")]
        char0: bool,
        /// With --class reduced: only positive characteristic.
        #[arg(long)]
        positive_char: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print g(T), the standard decomposition and the moduli of M_T.
    Gmin {
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build the witness order for the torsion part.
    Witness {
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build the witness order and check its torsion units by enumeration.
    Verify {
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate a class over all finite abelian groups up to an order.
    Catalog {
        #[arg(long)]
        max_order: u64,
        #[arg(long, default_value = "torsion-free")]
        class: String,
        /// Ranks 0..=R are tabulated.
        #[arg(long, default_value_t = 3)]
        max_rank: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Print the cyclotomic polynomial Φ_n.
    Cyclo {
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Analyse Z[x]/(Φ_{m_1}⋯Φ_{m_r}) inside its maximal order.
    Crt {
        #[arg(required = true)]
        moduli: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn parse(group: &str) -> Result<FGAbelianGroup, ExitCode> {
    parse_group(group).map_err(|e| input_error(format!("cannot parse {group:?}: {e}")))
}

fn parse_class(name: &str, char0: bool, positive_char: bool) -> Result<Class, ExitCode> {
    let class: Class = name.parse().map_err(input_error)?;
    match (class, char0, positive_char) {
        (Class::Reduced(ReducedMode::Any), true, _) => Ok(Class::Reduced(ReducedMode::Char0)),
        (Class::Reduced(ReducedMode::Any), _, true) => Ok(Class::Reduced(ReducedMode::PositiveChar)),
        (Class::Reduced(_), false, false) => Ok(class),
        (_, false, false) => Ok(class),
        _ => Err(input_error("--char0 and --positive-char apply to --class reduced only")),
    }
}

fn print_json<T: serde::Serialize + ?Sized>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn yes_no(b: bool) -> ExitCode {
    if b {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NO)
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Classify { group, class, char0, positive_char, common } => {
            let g = parse(&group)?;
            let class = parse_class(&class, char0, positive_char)?;
            let v = decide(class, &g, common.budget);
            if common.json {
                print_json(&v);
            } else {
                print!("{}", report::verdict(&v));
            }
            Ok(yes_no(v.realizable))
        }
        Command::Gmin { group, common } => {
            let g = parse(&group)?;
            let Ok(sd) = standard_decomposition(&g.torsion) else {
                println!("g(T) is undefined: |T| = {} is odd", g.torsion.order());
                return Ok(ExitCode::from(EXIT_NO));
            };
            let m0t = build_m0t(&g.torsion).expect("even order");
            let mt = build_mt(&g.torsion).expect("even order");
            if common.json {
                print_json(&serde_json::json!({
                    "group": g.torsion,
                    "g": sd.g(),
                    "decomposition": sd,
                    "m0t": m0t,
                    "mt": mt,
                }));
            } else {
                print!("{}", report::gmin(&g.torsion, &sd, &m0t, &mt));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { group, common } => {
            let g = parse(&group)?;
            let w = match witness_order(&g.torsion, common.budget) {
                Ok(w) => w,
                Err(e) => {
                    println!("no witness: {e}");
                    return Ok(ExitCode::from(EXIT_NO));
                }
            };
            if common.json {
                print_json(&w);
            } else {
                print!("{}", report::witness(&w));
            }
            if !w.verified {
                eprintln!("warning: witness not verified ({})", w.notes);
                let budget = w.notes.contains("exceed the budget");
                return Ok(ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_NO }));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { group, common } => verify(&group, common),
        Command::Catalog { max_order, class, max_rank, common } => {
            if max_order > MAX_CATALOG_ORDER {
                return Err(input_error(format!("--max-order is limited to {MAX_CATALOG_ORDER}")));
            }
            let class = parse_class(&class, false, false)?;
            let rows = report::catalog_rows(&groups_up_to(max_order), class, max_rank);
            if common.json {
                print_json(&report::catalog_json(&rows));
            } else {
                print!("{}", report::catalog_table(class, max_rank, &rows));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cyclo { n, common } => {
            if n == 0 {
                return Err(input_error("n must be at least 1"));
            }
            let phi = cyclotomic_poly(n);
            if common.json {
                let coeffs: Vec<String> = phi.coeffs().iter().map(ToString::to_string).collect();
                print_json(&serde_json::json!({ "n": n, "poly": phi.to_string(), "coeffs": coeffs }));
            } else {
                println!("{phi}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Crt { moduli, common } => crt(&moduli, common),
    }
}

fn verify(group: &str, common: Common) -> Result<ExitCode, ExitCode> {
    let g = parse(group)?;
    let w = match build_witness(&g.torsion) {
        Ok(w) => w,
        Err(e) => {
            println!("FAIL: {e}");
            return Ok(ExitCode::from(EXIT_NO));
        }
    };
    match verify_witness(&w, common.budget) {
        Ok(check) => {
            let pass = check.torsion == g.torsion && check.full_rank;
            if common.json {
                print_json(&serde_json::json!({
                    "group": g.torsion,
                    "witness": w.kind,
                    "moduli": w.moduli,
                    "torsion": check.torsion,
                    "full_rank": check.full_rank,
                    "unit_rank": check.unit_rank,
                    "pass": pass,
                }));
            } else {
                println!(
                    "{}: {} in {} has torsion units {} and unit rank {}",
                    if pass { "PASS" } else { "FAIL" },
                    w.kind,
                    report::moduli(&w.moduli),
                    check.torsion,
                    check.unit_rank
                );
            }
            Ok(yes_no(pass))
        }
        Err(ClassifyError::Cyc(e @ CycError::Budget { .. })) => {
            println!("unverified: {e}");
            eprintln!("hint: raise --budget or UNITGRP_BUDGET");
            Ok(ExitCode::from(EXIT_BUDGET))
        }
        Err(e) => {
            println!("FAIL: {e}");
            Ok(ExitCode::from(EXIT_NO))
        }
    }
}

fn crt(moduli: &[u64], common: Common) -> Result<ExitCode, ExitCode> {
    let analysis = || -> Result<_, CycError> {
        let surjective = if moduli.len() == 1 {
            cycring::CycloProduct::new(moduli)?;
            true
        } else {
            cycring::crt_is_surjective(moduli)?
        };
        let index = cycring::psi_image(moduli)?.index().expect("the CRT image has full rank");
        let torsion = cycring::torsion_units_of_quotient(moduli, common.budget);
        Ok((surjective, index, torsion))
    };
    let (surjective, index, torsion) = analysis().map_err(input_error)?;
    let torsion = match torsion {
        Ok(t) => Some(t.group),
        Err(e @ CycError::Budget { .. }) => {
            eprintln!("warning: {e}");
            None
        }
        Err(e) => return Err(input_error(e)),
    };
    if common.json {
        print_json(&serde_json::json!({
            "moduli": moduli,
            "surjective": surjective,
            "index": index.to_string(),
            "torsion": torsion,
        }));
    } else {
        println!("moduli: {}", report::moduli(moduli));
        println!("surjective: {}", if surjective { "yes" } else { "no" });
        println!("index: {index}");
        match &torsion {
            Some(t) => println!("torsion: {t}"),
            None => println!("torsion: unverified (budget)"),
        }
    }
    Ok(if torsion.is_some() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_BUDGET) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|code| code)
}
