//! Command-line front end: parse group/partition/law specs, dispatch the
//! computations, and emit canonical text and DOT.
//!
//! Exit codes: 0 on success, 1 on domain errors (invalid partitions,
//! descriptor mismatches, radius caps), 2 on parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use congroup::abelian::quotients::{
    decide_zn_l_quotient, fa_consistency, next_prime_above, quotient_types,
};
use congroup::abelian::parse_abelian;
use congroup::config::orthant::verify_orthant_properties;
use congroup::config::{
    compare_sets, compute_config_set_opts, stability_scan, ComputeOptions, Configuration,
    ConfigurationSet,
};
use congroup::groups::parse::{parse_elements, parse_group, parse_iso};
use congroup::groups::{GeneratingSequence, GroupDescriptor};
use congroup::invariants::{
    abelianization, check_law, isolator_tau, nilpotency_witness, torsion_elements,
    NilpotencyWitness,
};
use congroup::partition::{builtin, parse::parse_partition, Partition};
use congroup::Error;

const DEFAULT_MAX_RADIUS: usize = 12;

#[derive(Parser)]
#[command(
    name = "congroup",
    about = "Configuration sets of finitely generated groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PairArgs {
    /// Group spec, e.g. `Z^2`, `Dinf`, `UT(3)`, `Z^2 x F[table: 1 2; 2 1]`
    #[arg(long)]
    group: String,
    /// Generators: `standard` or a comma-separated element list
    #[arg(long, default_value = "standard")]
    gens: String,
    /// Builtin partition name (orthant|dinf5|trivial|sign) or a file path
    #[arg(long)]
    partition: String,
    /// Cap on the radius (guards the 3^n * l cell blowup)
    #[arg(long, default_value_t = DEFAULT_MAX_RADIUS)]
    max_radius: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a configuration set
    Con {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        radius: usize,
        /// Write the canonical text here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write every tuple as a DOT tree to this path
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Append the recorded witness of each tuple as comment lines
        #[arg(long)]
        witnesses: bool,
    },
    /// Scan set sizes over a radius range
    Scan {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0)]
        r_min: usize,
        #[arg(long)]
        r_max: usize,
    },
    /// Compare two configuration sets saved in canonical text form
    Compare { first: PathBuf, second: PathBuf },
    /// Transport a pair along an isomorphism and verify set equality
    Transport {
        #[command(flatten)]
        pair: PairArgs,
        /// `coord[[..],[..]]`, `relabel(..)`, `dihswap`, or `a ; b`
        #[arg(long)]
        iso: String,
        #[arg(long)]
        radius: usize,
    },
    /// Structural invariants of a group
    Invariants {
        #[arg(long)]
        group: String,
        /// Radius for the torsion listing
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Quotient types of a finitely generated abelian group
    Quotients {
        /// Abelian literal, e.g. `Z^2 + Z4`
        #[arg(long)]
        group_ab: String,
        #[arg(long, default_value_t = 2)]
        rank_bound: usize,
        #[arg(long, default_value_t = 8)]
        torsion_bound: u64,
        /// Decide one target instead of listing, e.g. `Z + Z2`
        #[arg(long)]
        target: Option<String>,
        /// Run the per-prime consistency check for `--target`; `auto`
        /// appends the required large prime to the listed ones
        #[arg(long)]
        fa_primes: Option<String>,
    },
    /// Check a law on ball tuples
    Law {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "standard")]
        gens: String,
        /// Law literal, e.g. `v1 v2^2 = v2^2 v1`
        #[arg(long)]
        law: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_RADIUS)]
        max_radius: usize,
    },
    /// Isolator classification of a torsion-free class-2 group
    Tau {
        #[arg(long)]
        group: String,
    },
    /// Render a configuration tuple as a DOT tree
    ExportDot {
        /// Comma-separated tuple, e.g. `1,2,3`
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce a named worked example
    Preset {
        /// dinf-example | orthant-z2xz2 | tr3-invariants
        name: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn workers_from_env() -> usize {
    std::env::var("CONGROUP_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}

fn load_pair(pair: &PairArgs) -> Result<(GroupDescriptor, GeneratingSequence, Partition), Error> {
    let descriptor = parse_group(&pair.group)?;
    let gens = load_gens(&descriptor, &pair.gens)?;
    let partition = load_partition(&descriptor, &pair.partition)?;
    Ok((descriptor, gens, partition))
}

fn load_gens(descriptor: &GroupDescriptor, spec: &str) -> Result<GeneratingSequence, Error> {
    if spec.trim() == "standard" {
        return Ok(descriptor.standard_generators());
    }
    let elements = parse_elements(descriptor, spec)?;
    GeneratingSequence::new(descriptor, elements)
}

fn load_partition(descriptor: &GroupDescriptor, spec: &str) -> Result<Partition, Error> {
    match spec {
        "orthant" | "dinf5" | "trivial" | "sign" => builtin::by_name(spec, descriptor),
        path => {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse {
                what: format!("cannot read partition file: {e}"),
                at: path.to_string(),
            })?;
            parse_partition(descriptor, &text)
        }
    }
}

fn check_radius(radius: usize, max: usize) -> Result<(), Error> {
    if radius > max {
        Err(Error::RadiusTooLarge { radius, max })
    } else {
        Ok(())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Parse {
            what: format!("cannot write output: {e}"),
            at: path.display().to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Con { pair, radius, out, dot, witnesses } => {
            check_radius(radius, pair.max_radius)?;
            let (descriptor, gens, partition) = load_pair(&pair)?;
            let options = ComputeOptions { workers: workers_from_env() };
            let set =
                compute_config_set_opts(&descriptor, &gens, &partition, radius, options)?;
            let mut text = set.to_canonical_text();
            if witnesses {
                for c in set.configurations() {
                    if let Some(w) = set.witness(c) {
                        text.push_str(&format!(
                            "# witness {c} <- {} (length {})\n",
                            w.element, w.word_length
                        ));
                    }
                }
            }
            emit(&out, &text)?;
            if let Some(dot_path) = dot {
                let rendered = congroup::config::dot::export_set(&set)?;
                fs::write(&dot_path, rendered).map_err(|e| Error::Parse {
                    what: format!("cannot write DOT: {e}"),
                    at: dot_path.display().to_string(),
                })?;
            }
            Ok(())
        }
        Command::Scan { pair, r_min, r_max } => {
            check_radius(r_max, pair.max_radius)?;
            let (descriptor, gens, partition) = load_pair(&pair)?;
            let scan = stability_scan(&descriptor, &gens, &partition, r_min, r_max)?;
            println!("{scan}");
            Ok(())
        }
        Command::Compare { first, second } => {
            let read = |p: &PathBuf| -> Result<ConfigurationSet, Error> {
                let text = fs::read_to_string(p).map_err(|e| Error::Parse {
                    what: format!("cannot read set: {e}"),
                    at: p.display().to_string(),
                })?;
                ConfigurationSet::from_canonical_text(&text)
            };
            let a = read(&first)?;
            let b = read(&second)?;
            let cmp = compare_sets(&a, &b)?;
            println!("{cmp}");
            Ok(())
        }
        Command::Transport { pair, iso, radius } => {
            check_radius(radius, pair.max_radius)?;
            let (descriptor, gens, partition) = load_pair(&pair)?;
            let iso = parse_iso(&iso)?;
            let (gens2, partition2) =
                congroup::config::transport::transport(&iso, &descriptor, &gens, &partition)?;
            let options = ComputeOptions { workers: workers_from_env() };
            let a = compute_config_set_opts(&descriptor, &gens, &partition, radius, options)?;
            let b = compute_config_set_opts(&descriptor, &gens2, &partition2, radius, options)?;
            println!("original pair:");
            print!("{}", a.to_canonical_text());
            println!("transported pair:");
            print!("{}", b.to_canonical_text());
            println!("comparison: {}", compare_sets(&a, &b)?);
            Ok(())
        }
        Command::Invariants { group, radius } => {
            let descriptor = parse_group(&group)?;
            println!("group: {descriptor}");
            match descriptor.nilpotency_class() {
                Some(c) => println!("nilpotency class: {c}"),
                None => println!("nilpotency class: not nilpotent"),
            }
            println!("hirsch length: {}", descriptor.hirsch_length());
            println!(
                "torsion-free: {}",
                if descriptor.is_torsion_free() { "yes" } else { "no" }
            );
            println!("abelianization: {}", abelianization(&descriptor));
            let torsion = torsion_elements(&descriptor, radius)?;
            let listed: Vec<String> =
                torsion.elements.iter().map(|e| e.to_string()).collect();
            println!(
                "torsion elements (ball radius {radius}): {{{}}}{}",
                listed.join(", "),
                if torsion.complete { " (complete)" } else { " (ball-limited)" }
            );
            Ok(())
        }
        Command::Quotients { group_ab, rank_bound, torsion_bound, target, fa_primes } => {
            let g = parse_abelian(&group_ab)?;
            match target {
                None => {
                    println!(
                        "quotient types of {g} (rank <= {rank_bound}, |T| <= {torsion_bound}):"
                    );
                    println!("{:<6} {:<20} witness", "rank", "torsion");
                    for q in quotient_types(&g, rank_bound, torsion_bound) {
                        println!("{:<6} {:<20} {}", q.rank, q.torsion.to_string(), q.witness);
                    }
                    Ok(())
                }
                Some(target) => {
                    let t = parse_abelian(&target)?;
                    let l = congroup::abelian::FiniteAbelianType::from_cyclic_orders(
                        t.invariant_factors(),
                    );
                    match decide_zn_l_quotient(&g, t.rank(), &l) {
                        Some(w) => println!("yes: {g} has quotient {t}, witness {w}"),
                        None => println!("no: {t} is not a quotient of {g}"),
                    }
                    if let Some(spec) = fa_primes {
                        let mut primes = Vec::new();
                        let mut auto = false;
                        for tok in spec.split(',') {
                            let tok = tok.trim();
                            if tok == "auto" {
                                auto = true;
                            } else {
                                primes.push(tok.parse::<u64>().map_err(|_| Error::Parse {
                                    what: "prime".into(),
                                    at: tok.into(),
                                })?);
                            }
                        }
                        if auto {
                            primes.push(next_prime_above(l.order() * g.torsion_order()));
                        }
                        let report = fa_consistency(&g, t.rank(), &l, &primes)?;
                        println!("{report}");
                    }
                    Ok(())
                }
            }
        }
        Command::Law { group, gens, law, radius, max_radius } => {
            check_radius(radius, max_radius)?;
            let descriptor = parse_group(&group)?;
            let gens = load_gens(&descriptor, &gens)?;
            let law = congroup::invariants::law::parse_law(&law)?;
            let result = check_law(&descriptor, &gens, &law, radius)?;
            println!("law {law}: {result}");
            Ok(())
        }
        Command::Tau { group } => {
            let descriptor = parse_group(&group)?;
            println!("{}", isolator_tau(&descriptor));
            Ok(())
        }
        Command::ExportDot { tuple, out } => {
            let mut entries = Vec::new();
            for tok in tuple.split(',') {
                entries.push(tok.trim().parse::<usize>().map_err(|_| Error::Parse {
                    what: "tuple entry".into(),
                    at: tok.into(),
                })?);
            }
            if entries.len() < 2 {
                return Err(Error::Parse {
                    what: "tuple needs at least two entries".into(),
                    at: tuple,
                });
            }
            let k = entries.len() - 1;
            let c = Configuration::new(entries);
            let text = congroup::config::dot::export_tree(&c, k)?;
            emit(&out, &text)
        }
        Command::Preset { name } => preset(&name),
    }
}

fn preset(name: &str) -> Result<(), Error> {
    let workers = workers_from_env();
    let options = ComputeOptions { workers };
    match name {
        "dinf-example" => {
            let d = GroupDescriptor::dihedral_infinite();
            let gens = d.standard_generators();
            let p = builtin::dinf5(&d)?;
            let set = compute_config_set_opts(&d, &gens, &p, 3, options)?;
            println!("infinite dihedral group, generators (x, y), five-cell partition");
            print!("{}", set.to_canonical_text());
            let scan = stability_scan(&d, &gens, &p, 1, 6)?;
            println!("{scan}");
            Ok(())
        }
        "orthant-z2xz2" => {
            let d = parse_group("Z^2 x F[table: 1 2; 2 1]")?;
            let gens = d.standard_generators();
            let p = builtin::orthant(&d)?;
            let set = compute_config_set_opts(&d, &gens, &p, 6, options)?;
            println!(
                "Z^2 x Z2 with the orthant partition ({} cells) at radius 6",
                p.len()
            );
            println!("tuples: {}", set.len());
            let report = verify_orthant_properties(&d, &gens, &p, &set)?;
            if report.is_clean() {
                println!(
                    "containment properties (I)-(IV): hold on all {} tuples",
                    report.tuples_checked
                );
            } else {
                for v in &report.violations {
                    println!("violation: {v}");
                }
            }
            print!("{}", set.to_canonical_text());
            Ok(())
        }
        "tr3-invariants" => {
            let d = parse_group("UT(3)")?;
            let gens = d.standard_generators();
            println!("group: {d}");
            println!("hirsch length: {}", d.hirsch_length());
            println!(
                "torsion-free: {}",
                if d.is_torsion_free() { "yes" } else { "no" }
            );
            let consistent = nilpotency_witness(&d, &gens, 2, 2)?;
            println!("class <= 2 check: {consistent}");
            let violated = nilpotency_witness(&d, &gens, 1, 2)?;
            match violated {
                NilpotencyWitness::Violation(_) => println!("class <= 1 check: {violated}"),
                _ => println!("class <= 1 check: unexpectedly consistent"),
            }
            println!("isolator: {}", isolator_tau(&d));
            println!("abelianization: {}", abelianization(&d));
            Ok(())
        }
        other => Err(Error::Parse {
            what: format!(
                "unknown preset `{other}` (expected dinf-example|orthant-z2xz2|tr3-invariants)"
            ),
            at: other.to_string(),
        }),
    }
}
