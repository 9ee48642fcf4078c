//! Command line. Exit codes: 0 success or "yes", 1 negative answer, 2 usage or IO error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use pats_core::dist::ServerState;
use pats_core::reduction::{msat_solve, Assignment};
use pats_core::rtas::{assemble, colors_of, derive_seed, uniquely_self_assembles, Status};
use pats_core::{wire, Pattern, Tile};

use crate::config::Config;
use crate::crypto::{self, KeyPair};
use crate::formats::{self, FormatError};
use crate::net::{client, server};
use crate::{data, parallel};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pats", version, about = "Minimal directed tile sets for colored patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for tile sets of a given size that assemble a pattern.
    Search {
        pattern: PathBuf,
        #[arg(long)]
        tiles: usize,
        /// Write one result per isomorphism class.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Try 1, 2, ... up to --tiles and stop at the first size with results.
        #[arg(long)]
        minimize: bool,
    },
    /// Jobs with a given number of placed tiles.
    Frontier {
        pattern: PathBuf,
        #[arg(long)]
        tiles: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        count_only: bool,
        /// Hex job frames, one per line (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Encode a monotone formula as a pattern for the signal tile set.
    Reduce {
        formula: PathBuf,
        /// Number of true variables (default: from the header).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the seed of a satisfying assignment, if one exists.
        #[arg(long)]
        seed_out: Option<PathBuf>,
        /// Check the encoding on this instance by exhaustive seed enumeration.
        #[arg(long)]
        check: bool,
    },
    /// Grow the terminal assembly of a tile set from a seed.
    Simulate {
        tiles: PathBuf,
        #[arg(long, conflicts_with = "derive_from", required_unless_present = "derive_from")]
        seed: Option<PathBuf>,
        /// Take the seed from the border glues of an assembly file.
        #[arg(long)]
        derive_from: Option<PathBuf>,
        /// Write the colors as a pattern file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print glues of every cell.
        #[arg(long)]
        grid: bool,
        /// Use signal names for glues in the grid.
        #[arg(long)]
        names: bool,
    },
    /// Does the tile set uniquely assemble the pattern from the seed?
    Verify { pattern: PathBuf, tiles: PathBuf, seed: PathBuf },
    /// Run the job server.
    Serve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a worker client.
    Work {
        #[arg(long)]
        config: PathBuf,
    },
    /// Generate an RSA key pair.
    GenKeys {
        dir: PathBuf,
        #[arg(long, default_value = "client")]
        name: String,
        #[arg(long, default_value_t = crypto::KEY_BITS)]
        bits: usize,
    },
    /// Solve a monotone formula with exactly k true variables.
    Sat {
        formula: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn read_pattern(p: &Path) -> Result<Pattern, FormatError> {
    formats::parse_pattern(&formats::read_file(p)?)
}

fn read_formula(p: &Path, k: Option<usize>) -> Result<(pats_core::reduction::MonotoneFormula, usize), FormatError> {
    let (f, header_k) = formats::parse_formula(&formats::read_file(p)?)?;
    Ok((f, k.unwrap_or(header_k)))
}

fn set_string(a: &Assignment) -> String {
    let vars: Vec<String> = a.true_vars().iter().map(usize::to_string).collect();
    format!("{{{}}}", vars.join(","))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Search { pattern, tiles, out: path, workers, minimize } => {
            let p = read_pattern(&pattern)?;
            let sizes: Vec<usize> = if minimize { (1..=tiles).collect() } else { vec![tiles] };
            for len in sizes {
                let report = parallel::search::<Tile>(&p, len, workers)?;
                writeln!(out, "tiles {len}: {} classes, {} results, {} nodes expanded", report.classes.len(), report.results_found, report.nodes_expanded)?;
                if !report.classes.is_empty() || len == tiles {
                    if let Some(path) = &path {
                        formats::write_file(path, &formats::emit_results(&report.classes))?;
                    }
                    let yes = !report.classes.is_empty();
                    writeln!(out, "{}", if yes { "yes" } else { "no" })?;
                    return Ok(if yes { EXIT_YES } else { EXIT_NO });
                }
            }
            unreachable!("the last size always returns")
        }
        Command::Frontier { pattern, tiles, depth, count_only, out: path, workers } => {
            let p = read_pattern(&pattern)?;
            if count_only {
                writeln!(out, "{}", parallel::frontier_count::<Tile>(&p, tiles, depth, workers)?)?;
                return Ok(EXIT_YES);
            }
            let jobs = parallel::frontier::<Tile>(&p, tiles, depth, workers)?;
            let mut text = String::new();
            for j in &jobs {
                text.push_str(&hex::encode(wire::encode_job(j)?));
                text.push('\n');
            }
            match path {
                Some(path) => {
                    formats::write_file(&path, &text)?;
                    writeln!(out, "{}", jobs.len())?;
                }
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_YES)
        }
        Command::Reduce { formula, k, out: path, seed_out, check } => {
            let (f, k) = read_formula(&formula, k)?;
            let red = data::reduction();
            let pattern = red.build_pattern(&f, k)?;
            formats::write_file(&path, &formats::emit_pattern(&pattern))?;
            writeln!(out, "pattern {} x {}", pattern.width(), pattern.height())?;
            let mut code = EXIT_YES;
            if let Some(seed_path) = seed_out {
                match msat_solve(&f, k)? {
                    Some(phi) => {
                        formats::write_file(&seed_path, &formats::emit_seed(&red.build_seed(&f, k, &phi)?))?;
                        writeln!(out, "seed for {}", set_string(&phi))?;
                    }
                    None => {
                        writeln!(out, "unsatisfiable: no seed written")?;
                        code = EXIT_NO;
                    }
                }
            }
            if check {
                let report = red.verify(&f, k)?;
                writeln!(out, "checked {} hidden words, {} accepted, {} violations", report.words_checked, report.accepted.len(), report.violations.len())?;
                for v in &report.violations {
                    writeln!(out, "violation: {v:?}")?;
                }
                if !report.agrees() {
                    code = EXIT_NO;
                }
            }
            Ok(code)
        }
        Command::Simulate { tiles, seed, derive_from, out: path, grid, names } => {
            let ts = formats::parse_tileset(&formats::read_file(&tiles)?)?;
            let seed = match (seed, derive_from) {
                (Some(s), _) => formats::parse_seed(&formats::read_file(&s)?)?,
                (None, Some(a)) => derive_seed(&formats::parse_assembly(&formats::read_file(&a)?, ts.len())?, &ts)?,
                (None, None) => return Err(Failure("either --seed or --derive-from is required".into())),
            };
            let o = assemble(&ts, &seed)?;
            match o.fail_pos {
                Some((x, y)) => writeln!(out, "{:?} at ({x}, {y})", o.status)?,
                None => writeln!(out, "{:?}", o.status)?,
            }
            if grid {
                out.write_all(formats::emit_glue_grid(&o.assembly, &ts, names).as_bytes())?;
            }
            if o.status != Status::Complete {
                return Ok(EXIT_NO);
            }
            let colors = colors_of(&o.assembly, &ts)?;
            match path {
                Some(p) => formats::write_file(&p, &formats::emit_pattern(&colors))?,
                None if !grid => out.write_all(formats::emit_pattern(&colors).as_bytes())?,
                None => {}
            }
            Ok(EXIT_YES)
        }
        Command::Verify { pattern, tiles, seed } => {
            let p = read_pattern(&pattern)?;
            let ts = formats::parse_tileset(&formats::read_file(&tiles)?)?;
            let s = formats::parse_seed(&formats::read_file(&seed)?)?;
            let yes = uniquely_self_assembles(&ts, &s, &p);
            writeln!(out, "{}", if yes { "yes" } else { "no" })?;
            Ok(if yes { EXIT_YES } else { EXIT_NO })
        }
        Command::Serve { config } => serve(&config, out),
        Command::Work { config } => work(&config, out),
        Command::GenKeys { dir, name, bits } => {
            std::fs::create_dir_all(&dir)?;
            let kp = KeyPair::generate_bits(bits)?;
            let (sk, pk) = kp.save(&dir, &name)?;
            writeln!(out, "{}\n{}", sk.display(), pk.display())?;
            Ok(EXIT_YES)
        }
        Command::Sat { formula, k } => {
            let (f, k) = read_formula(&formula, k)?;
            match msat_solve(&f, k)? {
                Some(phi) => {
                    writeln!(out, "{}", set_string(&phi))?;
                    Ok(EXIT_YES)
                }
                None => {
                    writeln!(out, "unsatisfiable")?;
                    Ok(EXIT_NO)
                }
            }
        }
    }
}

fn load_config(path: &Path) -> Result<Config, Failure> {
    let mut c = Config::load(path)?;
    c.apply_env()?;
    Ok(c)
}

/// State to start the server from: the snapshot if one exists, otherwise a fresh frontier.
pub fn initial_state(c: &Config) -> Result<ServerState, String> {
    let s = &c.server;
    let keys = s.authorized_keys.iter().map(|p| crypto::load_public(p)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    if let Some(p) = s.state_path.as_deref().filter(|p| p.exists()) {
        let mut st = server::load_state(p).map_err(|e| format!("{}: {e}", p.display()))?;
        st.authorized_keys = keys;
        return Ok(st);
    }
    let pattern_path = s.pattern.as_deref().ok_or("server.pattern is required without a saved state")?;
    let p = read_pattern(pattern_path).map_err(|e| e.to_string())?;
    let len = s.tiles.ok_or("server.tiles is required without a saved state")?;
    let f = pats_core::search::frontier::<Tile>(&p, len, s.depth.unwrap_or(0)).map_err(|e| e.to_string())?;
    let mut st = ServerState::new(f.jobs, keys);
    st.results.extend(f.results.into_iter().map(|r| ("server".to_string(), r)));
    Ok(st)
}

fn serve(config: &Path, out: &mut dyn Write) -> Outcome {
    let c = load_config(config)?;
    let st = initial_state(&c)?;
    writeln!(out, "{} jobs pending", st.jobs.len())?;
    let handle = server::ServerHandle::spawn(c.server_config()?, st)?;
    writeln!(out, "listening on {}", handle.addr())?;
    while !handle.is_finished() {
        std::thread::sleep(std::time::Duration::from_millis(200));
    }
    // linger so that clients still polling learn that the search is over
    std::thread::sleep(std::time::Duration::from_secs(2));
    let st = handle.shutdown();
    let classes = pats_core::search::isomorphism_classes(st.results.into_iter().map(|(_, r)| r).collect());
    writeln!(out, "finished: {} classes, {} jobs solved, {} killings", classes.len(), st.solved, st.killings)?;
    if let Some(p) = &c.server.results {
        formats::write_file(p, &formats::emit_results(&classes))?;
        writeln!(out, "results written to {}", p.display())?;
    }
    Ok(if classes.is_empty() { EXIT_NO } else { EXIT_YES })
}

fn work(config: &Path, out: &mut dyn Write) -> Outcome {
    let c = load_config(config)?;
    let key_path = c.client.private_key.as_deref().ok_or(Failure("client.private_key is required".into()))?;
    let pattern_path = c.client.pattern.as_deref().ok_or(Failure("client.pattern is required".into()))?;
    let keys = KeyPair::load(key_path)?;
    let pattern = read_pattern(pattern_path)?;
    let s = client::run(&c.client_config()?, &keys, &pattern)?;
    writeln!(out, "client {}: {} jobs, {} expansions", s.id, s.jobs, s.expansions)?;
    Ok(EXIT_YES)
}
