//! Command-line front end: parse an operator and named subspaces from a
//! JSON document, run the analyses, and print human-readable or JSON
//! reports plus DOT diagrams.
//!
//! Exit codes: 0 success, 1 property violation, 2 parse error,
//! 3 hypothesis failure (non-split characteristic polynomial, wrong field,
//! and similar), 4 enumeration cap exceeded.

mod io;
mod out;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hinv::classify::{classify_subspace, is_invariant, ClassifyOptions};
use hinv::error::Error;
use hinv::lattice::{enumerate_hinv, search_characteristic_not_hyperinvariant};
use hinv::marked::ExponentTuple;
use hinv::operator::{decompose, eigenvalues, jordan_structure};
use hinv::verify::{run_operator_suite, run_random_suite, SweepOptions, VerifyReport};
use hinv::{Caps, Verdict};

use io::{load_problem, parse_problem, Problem, BUNDLED_FIXTURES};
use out::subspace_rows;

#[derive(Parser)]
#[command(
    name = "hinv",
    version,
    about = "Exact classification of invariant subspaces over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Cap on vectors enumerated from one subspace
    #[arg(long, global = true)]
    cap_vectors: Option<u64>,
    /// Cap on subspaces enumerated from one ambient space
    #[arg(long, global = true)]
    cap_subspaces: Option<u64>,
    /// Cap on generator tuples swept in one pass
    #[arg(long, global = true)]
    cap_tuples: Option<u64>,
    /// Cap on commutant members enumerated when counting
    #[arg(long, global = true)]
    cap_members: Option<u64>,
    /// Node budget for the markedness search
    #[arg(long, global = true)]
    search_budget: Option<u64>,
    /// Use genuine automorphism enumeration even over larger prime fields
    #[arg(long, global = true)]
    force_bruteforce: bool,
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
}

impl Common {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(v) = self.cap_vectors {
            caps.vectors = v;
        }
        if let Some(v) = self.cap_subspaces {
            caps.subspaces = v;
        }
        if let Some(v) = self.cap_tuples {
            caps.tuples = v;
        }
        if let Some(v) = self.cap_members {
            caps.members = v;
        }
        if let Some(v) = self.search_budget {
            caps.search_nodes = v;
        }
        caps
    }

    fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            force_bruteforce: self.force_bruteforce,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print eigenvalues, Jordan exponents, and a generator tuple
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Depth tuple like "1,0" to report on (uses the input's `r` field
        /// when omitted)
        #[arg(long)]
        r: Option<String>,
    },
    /// Classify a named subspace as invariant / marked / characteristic /
    /// hyperinvariant
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        subspace: String,
    },
    /// Enumerate the hyperinvariant lattice, optionally writing a DOT file
    Lattice {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List invariant subspaces that are characteristic but not
    /// hyperinvariant (a GF(2) phenomenon)
    Search {
        #[arg(long)]
        input: PathBuf,
        /// Run anyway over a field where the list is provably empty
        #[arg(long)]
        force: bool,
    },
    /// Check fixture expectations and run the property suites
    Verify {
        /// Input document; the bundled fixtures run when omitted
        #[arg(long)]
        input: Option<PathBuf>,
        /// Random sweep: P N COUNT
        #[arg(long, num_args = 3, value_names = ["P", "N", "COUNT"])]
        random: Option<Vec<u64>>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn parse(message: String) -> Self {
        CliError { code: 2, message }
    }

    fn violation(message: String) -> Self {
        CliError { code: 1, message }
    }

    fn hypothesis(message: String) -> Self {
        CliError { code: 3, message }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::EnumerationTooLarge { .. } => 4,
            Error::BadModulus(_)
            | Error::LengthMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::AmbientMismatch { .. }
            | Error::NotSquare { .. } => 2,
            _ => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::parse(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze { input, r } => cmd_analyze(&cli.common, input, r.as_deref()),
        Command::Classify { input, subspace } => cmd_classify(&cli.common, input, subspace),
        Command::Lattice { input, dot } => cmd_lattice(&cli.common, input, dot.as_deref()),
        Command::Search { input, force } => cmd_search(&cli.common, input, *force),
        Command::Verify {
            input,
            random,
            seed,
        } => cmd_verify(&cli.common, input.as_deref(), random.as_deref(), *seed),
    }
}

fn parse_depths(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| CliError::parse(format!("bad depth tuple entry {part:?}: {e}")))
        })
        .collect()
}

fn cmd_analyze(common: &Common, input: &Path, r_flag: Option<&str>) -> Result<(), CliError> {
    let problem = load_problem(input)?;
    let f = &problem.operator;
    let eigs = eigenvalues(f)?;
    let components = decompose(f)?;

    let mut comps_out = Vec::new();
    for comp in &components {
        let nil = comp.nilpotent_part();
        let js = jordan_structure(&nil)?;
        let ambient_generators: Vec<_> = js
            .generators
            .iter()
            .map(|g| comp.lift_vector(g))
            .collect();
        comps_out.push(out::ComponentOut {
            lambda: comp.lambda,
            dim: comp.dim(),
            exponents: js.exponents.clone(),
            generators: ambient_generators.iter().map(|g| g.symbolic()).collect(),
            generator_rows: ambient_generators
                .iter()
                .map(|g| g.entries().to_vec())
                .collect(),
        });
    }

    let depths: Option<Vec<usize>> = match r_flag {
        Some(text) => Some(parse_depths(text)?),
        None => problem.r.clone(),
    };
    let depth_report = match depths {
        Some(depths) if f.is_nilpotent() => {
            let js = jordan_structure(f)?;
            let tuple = ExponentTuple::new(depths.clone(), js.exponents.clone())
                .map_err(|e| CliError::parse(e.to_string()))?;
            let admissible = tuple.is_admissible();
            let monotone = tuple.is_monotone();
            let (w_r, w_ru, independent) = if admissible {
                let wr = hinv::marked::w_r(f, &tuple)?;
                let wru = hinv::marked::w_ru(f, &js, &tuple)?;
                let independent = wr == wru;
                (
                    Some(subspace_rows(&wr)),
                    Some(subspace_rows(&wru)),
                    Some(independent),
                )
            } else {
                (None, None, None)
            };
            Some(out::DepthReportOut {
                depths,
                admissible,
                monotone,
                w_r,
                w_ru,
                tuple_independent: independent,
            })
        }
        Some(_) => {
            return Err(CliError::hypothesis(
                "depth tuples apply to nilpotent operators only".to_string(),
            ))
        }
        None => None,
    };

    let report = out::AnalyzeOut {
        p: problem.field.modulus(),
        dim: f.dim(),
        nilpotent: f.is_nilpotent(),
        eigenvalues: eigs
            .iter()
            .map(|&(lambda, multiplicity)| out::EigenvalueOut {
                lambda,
                multiplicity,
            })
            .collect(),
        components: comps_out,
        depth_report,
    };

    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Ok(());
    }

    println!("p = {}, dimension = {}", report.p, report.dim);
    for e in &report.eigenvalues {
        println!("lambda = {}: multiplicity {}", e.lambda, e.multiplicity);
    }
    for c in &report.components {
        let t = c
            .exponents
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let u = c.generators.join(", ");
        println!(
            "component lambda = {}: dim {}, t = ({}), U = ({})",
            c.lambda, c.dim, t, u
        );
    }
    if let Some(d) = &report.depth_report {
        let r = d
            .depths
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        println!(
            "r = ({}): admissible {}, monotone {}",
            r, d.admissible, d.monotone
        );
        if let Some(ind) = d.tuple_independent {
            println!(
                "W(r, U) {} W(r): the construction is {}independent of the tuple",
                if ind { "=" } else { "!=" },
                if ind { "" } else { "not " }
            );
        }
    }
    Ok(())
}

fn cmd_classify(common: &Common, input: &Path, name: &str) -> Result<(), CliError> {
    let problem = load_problem(input)?;
    let f = &problem.operator;
    let x = problem
        .subspaces
        .get(name)
        .ok_or_else(|| CliError::parse(format!("no subspace named {name} in the input")))?;
    let caps = common.caps();

    let report = if is_invariant(f, x)? {
        let rep = classify_subspace(f, x, &caps, common.classify_options())?;
        out::ClassifyOut::from_report(name, x.dim(), &rep)
    } else {
        out::ClassifyOut::non_invariant(name, x.dim())
    };

    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Ok(());
    }

    let glyph = |s: &str| match s {
        "yes" => "\u{2713}",
        "no" => "\u{2717}",
        _ => "?",
    };
    println!(
        "subspace {}: invariant {} | marked {} | characteristic {} | hyperinvariant {}",
        report.subspace,
        glyph(report.invariant),
        glyph(report.marked),
        glyph(report.characteristic),
        glyph(report.hyperinvariant),
    );
    for w in &report.witnesses {
        match (&w.moves, &w.to) {
            (Some(from), Some(to)) => {
                println!("  witness ({}): maps {} to {}", w.kind, from, to)
            }
            _ => println!("  witness ({})", w.kind),
        }
    }
    Ok(())
}

fn cmd_lattice(
    common: &Common,
    input: &Path,
    dot: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let problem = load_problem(input)?;
    let f = &problem.operator;
    let lat = enumerate_hinv(f)?;

    let elements: Vec<out::LatticeElementOut> = lat
        .elements()
        .iter()
        .zip(lat.labels())
        .map(|(s, labels)| out::LatticeElementOut {
            dim: s.dim(),
            labels: labels.clone(),
            basis: subspace_rows(s),
        })
        .collect();
    let report = out::LatticeOut {
        count: lat.len(),
        closed_under_meet_and_join: lat.is_closed(),
        elements,
        hasse_edges: lat.hasse().to_vec(),
    };

    if let Some(path) = dot {
        fs::write(path, lat.to_dot("hinv"))?;
    }

    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Ok(());
    }

    println!("hyperinvariant family: {} subspaces", report.count);
    for (i, e) in report.elements.iter().enumerate() {
        println!("  [{}] dim={}  {}", i, e.dim, e.labels.join(", "));
    }
    println!("hasse edges: {}", report.hasse_edges.len());
    for (lo, hi) in &report.hasse_edges {
        println!("  {lo} -> {hi}");
    }
    Ok(())
}

fn cmd_search(common: &Common, input: &Path, force: bool) -> Result<(), CliError> {
    let problem = load_problem(input)?;
    let f = &problem.operator;
    if problem.field.modulus() != 2 && !force {
        return Err(CliError::hypothesis(format!(
            "search targets GF(2); over GF({}) every characteristic subspace is \
             hyperinvariant, so the list is empty (use --force to run anyway)",
            problem.field.modulus()
        )));
    }
    let caps = common.caps();
    let found =
        search_characteristic_not_hyperinvariant(f, &caps, common.classify_options())?;
    let report = out::SearchOut {
        count: found.len(),
        elements: found
            .iter()
            .map(|s| out::LatticeElementOut {
                dim: s.dim(),
                labels: Vec::new(),
                basis: subspace_rows(s),
            })
            .collect(),
    };

    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Ok(());
    }

    println!(
        "characteristic but not hyperinvariant: {} found",
        report.count
    );
    for (s, e) in found.iter().zip(&report.elements) {
        println!("  dim={} {}", e.dim, s);
    }
    Ok(())
}

fn check_fixture(problem: &Problem, common: &Common) -> Result<out::FixtureOut, CliError> {
    let caps = common.caps();
    let name = problem.name.clone().unwrap_or_else(|| "input".to_string());
    let mut expectations = 0u64;
    let mut mismatches = 0u64;
    let mut details = Vec::new();

    for (sub_name, expect) in &problem.expect {
        let x = &problem.subspaces[sub_name];
        let f = &problem.operator;
        let invariant = is_invariant(f, x)?;
        let report = if invariant {
            Some(classify_subspace(f, x, &caps, common.classify_options())?)
        } else {
            None
        };
        let computed = |which: &str| -> (Verdict, String) {
            match &report {
                None => (Verdict::No, String::new()),
                Some(rep) => {
                    let v = match which {
                        "invariant" => rep.invariant,
                        "marked" => rep.marked,
                        "characteristic" => rep.characteristic,
                        _ => rep.hyperinvariant,
                    };
                    let mut witness = String::new();
                    if which == "hyperinvariant" {
                        if let Some(w) = &rep.hyper_witness {
                            witness = format!(" (witness: {w})");
                        }
                    }
                    (v, witness)
                }
            }
        };
        let mut check = |which: &str, expected: Option<bool>| {
            let Some(expected) = expected else {
                return;
            };
            expectations += 1;
            let (got, witness) = computed(which);
            if got.as_bool() != Some(expected) {
                mismatches += 1;
                details.push(format!(
                    "{name}/{sub_name}: {which} expected {expected}, computed {}{witness}",
                    out::verdict_str(got)
                ));
            }
        };
        check("invariant", expect.invariant);
        check("marked", expect.marked);
        check("characteristic", expect.characteristic);
        check("hyperinvariant", expect.hyperinvariant);
    }

    for nd in &problem.non_distributive {
        expectations += 1;
        let x = &problem.subspaces[nd.subspace.as_str()];
        let parts: Vec<_> = nd
            .parts
            .iter()
            .map(|p| problem.subspaces[p.as_str()].clone())
            .collect();
        let splits = hinv::classify::check_distributivity(&problem.operator, x, &parts)?;
        if splits {
            mismatches += 1;
            details.push(format!(
                "{name}/{}: expected the decomposition over {:?} to fail, but it splits",
                nd.subspace, nd.parts
            ));
        }
    }

    Ok(out::FixtureOut {
        name,
        expectations,
        mismatches,
        details,
    })
}

fn cmd_verify(
    common: &Common,
    input: Option<&std::path::Path>,
    random: Option<&[u64]>,
    seed: u64,
) -> Result<(), CliError> {
    let opts = SweepOptions {
        caps: common.caps(),
        force_bruteforce: common.force_bruteforce,
        seed,
        ..SweepOptions::default()
    };

    let mut fixtures_out: Vec<out::FixtureOut> = Vec::new();
    let mut suite = VerifyReport::default();

    if let Some(args) = random {
        let (p, n, count) = (args[0] as u16, args[1] as usize, args[2] as u32);
        let report = run_random_suite(p, n, count, seed, &opts)?;
        suite.merge(report.outcomes);
    } else if let Some(path) = input {
        let problem = load_problem(path)?;
        fixtures_out.push(check_fixture(&problem, common)?);
        let report = run_operator_suite(&problem.operator, &opts)?;
        suite.merge(report.outcomes);
    } else {
        for (name, text) in BUNDLED_FIXTURES {
            let problem = parse_problem(text)
                .map_err(|e| CliError::parse(format!("bundled fixture {name}: {e}")))?;
            fixtures_out.push(check_fixture(&problem, common)?);
            let report = run_operator_suite(&problem.operator, &opts)?;
            suite.merge(report.outcomes);
        }
    }

    let fixture_mismatches: u64 = fixtures_out.iter().map(|f| f.mismatches).sum();
    let passed = fixture_mismatches == 0 && suite.passed();
    let report = out::VerifyOut {
        fixtures: fixtures_out,
        properties: suite
            .outcomes
            .iter()
            .map(|o| out::PropertyOut {
                name: o.name.clone(),
                checked: o.checked,
                violations: o.violations,
                witness: o.witness.clone(),
                info: o.info.clone(),
            })
            .collect(),
        passed,
    };

    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for f in &report.fixtures {
            println!(
                "fixture {}: {} expectations, {} mismatches",
                f.name, f.expectations, f.mismatches
            );
            for d in &f.details {
                println!("  MISMATCH {d}");
            }
        }
        for p in &report.properties {
            let status = if p.violations == 0 { "ok" } else { "FAIL" };
            print!(
                "property {}: {} ({} checked, {} violations",
                p.name, status, p.checked, p.violations
            );
            if let Some(info) = &p.info {
                print!("; {info}");
            }
            println!(")");
            if let Some(w) = &p.witness {
                println!("  witness: {w}");
            }
        }
        println!("{}", if report.passed { "VERIFY PASS" } else { "VERIFY FAIL" });
    }

    if report.passed {
        Ok(())
    } else {
        Err(CliError::violation(
            "verification found violations".to_string(),
        ))
    }
}
