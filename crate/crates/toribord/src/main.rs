use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use toribord::bordism::{
    a_n, class_coordinates_unitary, class_coordinates_z2, is_realizable_unitary, is_realizable_z2,
};
use toribord::complex::{
    build_universal_z2_with, build_universal_z_truncated_with, Limits, Ring,
};
use toribord::homology::{reduced_homology_gf2, reduced_homology_z};
use toribord::io;
use toribord::poly::{d_z, J};
use toribord::toric::{
    apply_basis_change_unitary, connect_sum_unitary, connect_sum_z2, coloring_polynomial_z2,
    fixed_point_data_unitary, fixed_point_data_z2, pair_equivalent, phi_quasitoric,
};

#[derive(Parser)]
#[command(name = "toribord", version, about = "Equivariant bordism via universal unimodular complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Gf2,
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Build a universal complex and print its f-vector.
    Complex {
        #[arg(long, value_enum)]
        ring: RingArg,
        #[arg(long)]
        n: usize,
        /// Box bound (required for ring=z).
        #[arg(long)]
        bound: Option<u32>,
        /// Write the complex file here (stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lift the built-in size guards.
        #[arg(long)]
        allow_large: bool,
    },
    /// Reduced homology of a complex file in one dimension.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// The closed-form bordism dimension A_n.
    An {
        #[arg(long)]
        n: u32,
    },
    /// Realizability of fixed-point data (side J polynomial file).
    Check {
        #[arg(long)]
        poly: PathBuf,
        /// Truncation bound for unitary class coordinates.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Operations on characteristic pair files.
    Pair {
        #[command(subcommand)]
        op: PairOp,
    },
}

#[derive(Subcommand)]
enum PairOp {
    /// Validate a pair file.
    Validate(PairInput),
    /// Coloring polynomial of a small cover pair.
    Polynomial(PairOutput),
    /// phi of a quasitoric pair (verifies d = 0).
    Phi(PairOutput),
    /// Fixed-point data (the dual polynomial) of a pair.
    Dual(PairOutput),
    /// Structural equivalence of two pair files.
    Equivalent {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        pair2: PathBuf,
    },
    /// Connected sum of two pairs at the given vertex ids.
    Connectsum {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        pair2: PathBuf,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        v2: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a basis change matrix (rows as c1,c2,..;c1,c2,..) to a unitary pair.
    Basischange {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PairInput {
    #[arg(long)]
    pair: PathBuf,
}

#[derive(Args)]
struct PairOutput {
    #[arg(long)]
    pair: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn limits(allow_large: bool) -> Limits {
    let mut l = Limits {
        allow_large,
        ..Limits::default()
    };
    if let Ok(v) = std::env::var("TORIBORD_MAX_CELLS") {
        if let Ok(v) = v.parse::<usize>() {
            l.max_cells = v;
        }
    }
    l
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// The ring named in the first header line of a file.
fn sniff_ring(text: &str) -> Result<Ring, String> {
    for token in text.lines().next().unwrap_or("").split_whitespace() {
        match token {
            "ring=gf2" => return Ok(Ring::GF2),
            "ring=z" => return Ok(Ring::Z),
            _ => {}
        }
    }
    Err("header does not name a ring".into())
}

fn run() -> Result<(), String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Complex {
            ring,
            n,
            bound,
            out,
            allow_large,
        } => {
            let lim = limits(allow_large);
            let k = match ring {
                RingArg::Gf2 => {
                    build_universal_z2_with(n, &lim).map_err(|e| e.to_string())?
                }
                RingArg::Z => {
                    let b = bound.ok_or("ring=z requires --bound")?;
                    build_universal_z_truncated_with(n, b, &lim).map_err(|e| e.to_string())?
                }
            };
            let f: Vec<String> = k.f_vector().iter().map(|c| c.to_string()).collect();
            if out.is_some() {
                emit(&out, &io::write_complex(&k))?;
            } else {
                eprintln!("writing complex to stdout; pass --out to save it");
                print!("{}", io::write_complex(&k));
            }
            println!("{}", f.join(" "));
            Ok(())
        }
        Command::Homology { complex, dim } => {
            let k = io::read_complex(&read(&complex)?).map_err(|e| e.to_string())?;
            let summary = match k.ring() {
                Ring::GF2 => reduced_homology_gf2(&k, dim),
                Ring::Z => reduced_homology_z(&k, dim),
            };
            println!("{}", summary.display());
            Ok(())
        }
        Command::An { n } => {
            if n == 0 {
                return Err("--n must be >= 1".into());
            }
            let value = a_n(n).map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(())
        }
        Command::Check {
            poly,
            bound,
            allow_large,
        } => {
            let text = read(&poly)?;
            let lim = limits(allow_large);
            match sniff_ring(&text)? {
                Ring::GF2 => {
                    let g = io::read_poly_gf2::<J>(&text).map_err(|e| e.to_string())?;
                    let report = is_realizable_z2(&g, &lim);
                    println!("FAITHFUL {}", report.faithful);
                    println!("REALIZABLE {}", report.realizable);
                    if let Some(res) = &report.d_of_dual {
                        if !res.is_zero() {
                            print!("{}", io::write_poly_gf2(res));
                        }
                    }
                    if report.realizable {
                        let k = build_universal_z2_with(g.ambient_rank(), &lim)
                            .map_err(|e| e.to_string())?;
                        let coords =
                            class_coordinates_z2(&g, &k).map_err(|e| e.to_string())?;
                        let cs: Vec<String> =
                            coords.iter().map(|c| c.to_string()).collect();
                        println!("COORDS {}", cs.join(" "));
                    }
                }
                Ring::Z => {
                    let g = io::read_poly_z::<J>(&text).map_err(|e| e.to_string())?;
                    let report = is_realizable_unitary(&g, bound, &lim);
                    println!("FAITHFUL {}", report.faithful);
                    println!("REALIZABLE {}", report.realizable);
                    if let Some(res) = &report.d_of_dual {
                        if !res.is_zero() {
                            print!("{}", io::write_poly_z(res));
                        }
                    }
                    if report.realizable {
                        if let Some(b) = bound {
                            let k = build_universal_z_truncated_with(g.ambient_rank(), b, &lim)
                                .map_err(|e| e.to_string())?;
                            let coords = class_coordinates_unitary(&g, &k)
                                .map_err(|e| e.to_string())?;
                            let cs: Vec<String> =
                                coords.iter().map(|c| c.to_string()).collect();
                            println!("COORDS {}", cs.join(" "));
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Pair { op } => run_pair(op),
    }
}

fn run_pair(op: PairOp) -> Result<(), String> {
    match op {
        PairOp::Validate(input) => {
            let text = read(&input.pair)?;
            match sniff_ring(&text)? {
                Ring::GF2 => {
                    io::read_pair_z2(&text).map_err(|e| e.to_string())?;
                }
                Ring::Z => {
                    io::read_pair_unitary(&text).map_err(|e| e.to_string())?;
                }
            }
            println!("VALID");
            Ok(())
        }
        PairOp::Polynomial(args) => {
            let pair = io::read_pair_z2(&read(&args.pair)?).map_err(|e| e.to_string())?;
            let p = coloring_polynomial_z2(&pair).map_err(|e| e.to_string())?;
            emit(&args.out, &io::write_poly_gf2(&p))
        }
        PairOp::Phi(args) => {
            let pair = io::read_pair_unitary(&read(&args.pair)?).map_err(|e| e.to_string())?;
            let phi = phi_quasitoric(&pair).map_err(|e| e.to_string())?;
            let residual = d_z(&phi).map_err(|e| e.to_string())?;
            emit(&args.out, &io::write_poly_z(&phi))?;
            if residual.is_zero() {
                println!("d=0 verified");
                Ok(())
            } else {
                Err(format!("d(phi) != 0: {residual:?}"))
            }
        }
        PairOp::Dual(args) => {
            let text = read(&args.pair)?;
            match sniff_ring(&text)? {
                Ring::GF2 => {
                    let pair = io::read_pair_z2(&text).map_err(|e| e.to_string())?;
                    let g = fixed_point_data_z2(&pair).map_err(|e| e.to_string())?;
                    emit(&args.out, &io::write_poly_gf2(&g))
                }
                Ring::Z => {
                    let pair = io::read_pair_unitary(&text).map_err(|e| e.to_string())?;
                    let g = fixed_point_data_unitary(&pair).map_err(|e| e.to_string())?;
                    emit(&args.out, &io::write_poly_z(&g))
                }
            }
        }
        PairOp::Equivalent { pair, pair2 } => {
            let p1 = io::read_pair_unitary(&read(&pair)?).map_err(|e| e.to_string())?;
            let p2 = io::read_pair_unitary(&read(&pair2)?).map_err(|e| e.to_string())?;
            println!("EQUIVALENT {}", pair_equivalent(&p1, &p2));
            Ok(())
        }
        PairOp::Connectsum {
            pair,
            pair2,
            v1,
            v2,
            out,
        } => {
            let t1 = read(&pair)?;
            let t2 = read(&pair2)?;
            let r1 = sniff_ring(&t1)?;
            if r1 != sniff_ring(&t2)? {
                return Err("pair files use different rings".into());
            }
            match r1 {
                Ring::GF2 => {
                    let p1 = io::read_pair_z2(&t1).map_err(|e| e.to_string())?;
                    let p2 = io::read_pair_z2(&t2).map_err(|e| e.to_string())?;
                    let glued =
                        connect_sum_z2(&p1, v1, &p2, v2).map_err(|e| e.to_string())?;
                    emit(&out, &io::write_pair_z2(&glued))?;
                }
                Ring::Z => {
                    let p1 = io::read_pair_unitary(&t1).map_err(|e| e.to_string())?;
                    let p2 = io::read_pair_unitary(&t2).map_err(|e| e.to_string())?;
                    let glued =
                        connect_sum_unitary(&p1, v1, &p2, v2).map_err(|e| e.to_string())?;
                    emit(&out, &io::write_pair_unitary(&glued))?;
                }
            }
            println!("additivity verified");
            Ok(())
        }
        PairOp::Basischange { pair, matrix, out } => {
            let p = io::read_pair_unitary(&read(&pair)?).map_err(|e| e.to_string())?;
            let rows: Result<Vec<Vec<i64>>, String> = matrix
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|c| c.trim().parse::<i64>().map_err(|e| e.to_string()))
                        .collect()
                })
                .collect();
            let rows = rows?;
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let a = toribord::linalg::IntMatrix::from_i64(&refs);
            let changed = apply_basis_change_unitary(&p, &a).map_err(|e| e.to_string())?;
            emit(&out, &io::write_pair_unitary(&changed))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
