//! Random protocol values.

use pats_core::dist::{ClientMessage, PublicKey, ServerMessage};
use pats_core::search::{Job, ResultRecord};
use pats_core::{Assembly, Tile, TileSet};
use rand::rngs::StdRng;
use rand::Rng;

fn tiles(rng: &mut StdRng, min: usize) -> TileSet {
    let len = rng.gen_range(min..=15);
    (0..len).map(|_| Tile::new(rng.gen_range(0..31), rng.gen_range(0..31), rng.gen_range(0..31), rng.gen_range(0..31), rng.gen_range(0..32)).unwrap()).collect()
}

fn assembly(rng: &mut StdRng, len: usize, total: bool) -> Assembly {
    let (w, h) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let cells = (0..w * h).map(|_| if len == 0 || (!total && rng.gen_bool(0.3)) { -1 } else { rng.gen_range(0..len as i8) }).collect();
    Assembly::from_cells(w, h, cells, len).unwrap()
}

pub fn job(rng: &mut StdRng) -> Job {
    let t = tiles(rng, 0);
    let a = assembly(rng, t.len(), false);
    let (x, y) = (rng.gen_range(0..a.width()) as u16, rng.gen_range(0..a.height()) as u16);
    Job { x, y, kill_count: rng.gen(), tiles: t, assembly: a }
}

pub fn result(rng: &mut StdRng) -> ResultRecord {
    let t = tiles(rng, 1);
    let a = assembly(rng, t.len(), true);
    ResultRecord { tiles: t, assembly: a }
}

pub fn key(rng: &mut StdRng) -> PublicKey {
    let n = rng.gen_range(0..300);
    let e = rng.gen_range(0..8);
    PublicKey { modulus: (0..n).map(|_| rng.gen()).collect(), exponent: (0..e).map(|_| rng.gen()).collect() }
}

fn list<T>(rng: &mut StdRng, max: usize, f: fn(&mut StdRng) -> T) -> Vec<T> {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| f(rng)).collect()
}

pub fn client_message(rng: &mut StdRng) -> ClientMessage {
    let client = rng.gen();
    match rng.gen_range(0..4) {
        0 => ClientMessage::GetJob { client, key: key(rng) },
        1 => ClientMessage::JobDone { client, results: list(rng, 4, result), current: job(rng) },
        2 => ClientMessage::NewJobs { client, results: list(rng, 4, result), current: job(rng), next: job(rng), new_jobs: list(rng, 4, job) },
        _ => ClientMessage::Alive { client },
    }
}

pub fn server_message(rng: &mut StdRng) -> ServerMessage {
    match rng.gen_range(0..4) {
        0 => ServerMessage::Job { share: rng.gen(), job: job(rng) },
        1 => ServerMessage::Finished,
        2 => ServerMessage::Ack,
        _ => ServerMessage::Die,
    }
}
