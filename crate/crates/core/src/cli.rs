//! Command-line front end. Exit codes: 0 success, 1 a mathematical check
//! failed, 2 usage or input-file problems.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::oracle::{self, DEFAULT_SCAN_CAP};
use crate::ring::DualSystem;
use crate::sandwich::SandwichMap;
use crate::scalar::RingDescriptor;
use crate::session::{parse_matrix, parse_session, NamedMap, NamedSystem, Session};

#[derive(Parser)]
#[command(name = "fenring", about = "Exact endomorphism-ring toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized ring-axiom suite and report totality
    CheckRing {
        file: PathBuf,
        system: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a conjugation map from an invertible pair and write a session
    MakeConj {
        file: PathBuf,
        system: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the homomorphism identity on the spanning set
    VerifyHom { file: PathBuf, map: String },
    /// Minimize a map's term family and write the result
    Minimize {
        file: PathBuf,
        map: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Verify trace scaling and print the factor
    TraceFactor { file: PathBuf, map: String },
    /// Recover the conjugating pair of an isomorphism
    Recover { file: PathBuf, map: String },
    /// Brute-force enumeration of isomorphisms over a prime field
    Scan {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Input-shaped failures (bad files, bad flags, missing names) exit 2;
/// everything else that errors out of a check is a mathematical failure.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Reference(_)
        | Error::InvariantError(_)
        | Error::ShapeMismatch(_)
        | Error::DescriptorMismatch
        | Error::WrongDescriptor
        | Error::NotPrime(_)
        | Error::SizeGuard { .. }
        | Error::PreconditionViolated(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn load(file: &PathBuf) -> Result<Session> {
    parse_session(&std::fs::read_to_string(file)?)
}

fn dispatch(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::CheckRing {
            file,
            system,
            trials,
            seed,
        } => {
            let session = load(&file)?;
            let s = session.system(&system)?;
            let report = s.check_axioms(trials, seed)?;
            println!("total: {}", s.is_total());
            match report.failure {
                None => {
                    println!("axioms: pass ({} trials)", report.trials);
                    Ok(ExitCode::SUCCESS)
                }
                Some(f) => {
                    println!("axioms: FAIL ({})", f);
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::MakeConj {
            file,
            system,
            alpha,
            beta,
            output,
        } => {
            let session = load(&file)?;
            let s = session.system(&system)?;
            let alpha = parse_matrix(session.descriptor, &alpha)?;
            let beta = parse_matrix(session.descriptor, &beta)?;
            let conj = SandwichMap::conjugation(s, &alpha, &beta)?;
            let mut out = Session::new(session.descriptor);
            out.systems.push(NamedSystem {
                name: system.clone(),
                system: s.clone(),
            });
            let target_name = format!("{}_target", system);
            out.systems.push(NamedSystem {
                name: target_name.clone(),
                system: conj.target().clone(),
            });
            println!("G = {}", conj.target().evaluation());
            out.maps.push(NamedMap {
                name: format!("{}_conj", system),
                source: system,
                target: target_name,
                map: conj,
            });
            std::fs::write(&output, out.serialize())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyHom { file, map } => {
            let session = load(&file)?;
            let report = session.map(&map)?.map.is_homomorphism();
            match report.failure {
                None => {
                    println!("homomorphism: pass");
                    Ok(ExitCode::SUCCESS)
                }
                Some(f) => {
                    println!("homomorphism: FAIL");
                    println!("{}", f);
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Minimize { file, map, output } => {
            let session = load(&file)?;
            let named = session.map(&map)?;
            let min = named.map.minimized();
            println!("terms: {} -> {}", named.map.term_count(), min.term_count());
            let mut out = session.clone();
            for m in &mut out.maps {
                if m.name == map {
                    m.map = min.clone();
                }
            }
            std::fs::write(&output, out.serialize())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::TraceFactor { file, map } => {
            let session = load(&file)?;
            let factor = session.map(&map)?.map.trace_scaling_factor()?;
            println!("trace factor: {}", factor);
            Ok(ExitCode::SUCCESS)
        }
        Command::Recover { file, map } => {
            let session = load(&file)?;
            let named = session.map(&map)?;
            let (alpha, beta) = named.map.recover_conjugator()?;
            println!("alpha = {}", alpha);
            println!("beta = {}", beta);
            // recover_conjugator has already verified B G A = F
            println!("B G A = F: pass");
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            p,
            n,
            k,
            f,
            g,
            cap,
            json,
        } => {
            let d = RingDescriptor::prime_field(p)?;
            let fm = parse_matrix(d, &f)?;
            let gm = parse_matrix(d, &g)?;
            if fm.rows() != k || fm.cols() != n || gm.rows() != k || gm.cols() != n {
                return Err(Error::ShapeMismatch(format!(
                    "F and G must both be {}x{}",
                    k, n
                )));
            }
            let source = DualSystem::new(fm)?;
            let target = DualSystem::new(gm)?;
            let report = oracle::exhaustive_isomorphism_scan(&source, &target, cap)?;
            if json {
                let payload = serde_json::json!({
                    "total_maps": report.total_maps.to_string(),
                    "hom_count": report.hom_count,
                    "iso_count": report.iso_count,
                    "conjugation_action_count": report.conjugation_action_count,
                    "pass": report.pass,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("report serializes")
                );
            } else {
                println!("candidates: {}", report.total_maps);
                println!("homomorphisms: {}", report.hom_count);
                println!("isomorphisms: {}", report.iso_count);
                println!("conjugation actions: {}", report.conjugation_action_count);
                println!("result: {}", if report.pass { "PASS" } else { "FAIL" });
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
