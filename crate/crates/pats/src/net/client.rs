//! Worker client: asks for jobs, explores them, hands back splits and
//! checkpoints, and keeps its assignment alive with heartbeats.

use std::io::{BufReader, BufWriter};
use std::net::TcpStream;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Duration;

use pats_core::dist::{ClientId, ClientMessage, ServerMessage};
use pats_core::search::{Job, Worker, WorkerStep};
use pats_core::{wire, Pattern};

use super::frame::{self, ClientFrame};
use crate::crypto::KeyPair;

#[derive(Clone, Debug)]
pub struct ClientConfig {
    pub server: String,
    pub heartbeat: Duration,
    /// Wait after a `Die` answer to `GetJob`.
    pub die_delay: Duration,
    pub retry_min: Duration,
    pub retry_max: Duration,
    /// Attempts per message before giving up.
    pub max_retries: u32,
    pub io_timeout: Duration,
    /// Stop dead, without reporting, after this many expansions.
    pub crash_after: Option<u64>,
    /// Sleep after every expansion.
    pub throttle: Option<Duration>,
}

impl Default for ClientConfig {
    fn default() -> Self {
        ClientConfig {
            server: format!("127.0.0.1:{}", super::DEFAULT_PORT),
            heartbeat: Duration::from_secs(300),
            die_delay: Duration::from_secs(10),
            retry_min: Duration::from_secs(1),
            retry_max: Duration::from_secs(10),
            max_retries: 30,
            io_timeout: Duration::from_secs(120),
            crash_after: None,
            throttle: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("server unreachable after {attempts} attempts: {last}")]
    Unreachable { attempts: u32, last: String },
    #[error("unexpected reply to {0}")]
    Protocol(&'static str),
    #[error("encoding: {0}")]
    Wire(#[from] wire::WireError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClientSummary {
    pub id: ClientId,
    pub jobs: u64,
    pub expansions: u64,
    /// Set when `crash_after` stopped the client.
    pub crashed: bool,
}

struct Link<'a> {
    cfg: &'a ClientConfig,
    keys: &'a KeyPair,
}

impl Link<'_> {
    fn exchange_once(&self, f: &ClientFrame) -> Result<Vec<u8>, String> {
        let stream = TcpStream::connect(&self.cfg.server).map_err(|e| e.to_string())?;
        stream.set_read_timeout(Some(self.cfg.io_timeout)).map_err(|e| e.to_string())?;
        stream.set_write_timeout(Some(self.cfg.io_timeout)).map_err(|e| e.to_string())?;
        let mut w = BufWriter::new(stream.try_clone().map_err(|e| e.to_string())?);
        frame::write_client_frame(&mut w, f).map_err(|e| e.to_string())?;
        drop(w);
        frame::read_reply(&mut BufReader::new(stream)).map_err(|e| e.to_string())
    }

    /// Sends a frame, retrying transport failures with growing delays.
    fn exchange(&self, f: &ClientFrame) -> Result<Vec<u8>, ClientError> {
        let mut delay = self.cfg.retry_min;
        let mut last = String::new();
        for attempt in 1..=self.cfg.max_retries.max(1) {
            match self.exchange_once(f) {
                Ok(bytes) => return Ok(bytes),
                Err(e) => {
                    log::warn!("exchange attempt {attempt} failed: {e}");
                    last = e;
                }
            }
            if attempt < self.cfg.max_retries {
                std::thread::sleep(delay);
                delay = (delay * 2).min(self.cfg.retry_max);
            }
        }
        Err(ClientError::Unreachable { attempts: self.cfg.max_retries.max(1), last })
    }

    fn hello(&self) -> Result<ClientId, ClientError> {
        let bytes = self.exchange(&ClientFrame::Hello)?;
        Ok(wire::decode_id(&bytes)?)
    }

    fn send(&self, msg: &ClientMessage) -> Result<ServerMessage, ClientError> {
        let message = wire::encode_client(msg)?;
        let signature = self.keys.sign(&message);
        let bytes = self.exchange(&ClientFrame::Signed { message, signature })?;
        Ok(wire::decode_server(&bytes)?)
    }
}

enum JobEnd {
    Reported,
    Crashed,
}

/// Runs until the server reports `Finished`.
pub fn run(cfg: &ClientConfig, keys: &KeyPair, pattern: &Pattern) -> Result<ClientSummary, ClientError> {
    let link = Link { cfg, keys };
    let id = link.hello()?;
    log::info!("client id {id}");
    let mut summary = ClientSummary { id, ..ClientSummary::default() };
    loop {
        match link.send(&ClientMessage::GetJob { client: id, key: keys.wire_public() })? {
            ServerMessage::Finished => return Ok(summary),
            ServerMessage::Die => std::thread::sleep(cfg.die_delay),
            ServerMessage::Ack => return Err(ClientError::Protocol("GetJob")),
            ServerMessage::Job { share, job } => {
                summary.jobs += 1;
                if let JobEnd::Crashed = work(&link, id, pattern, job, share, &mut summary)? {
                    summary.crashed = true;
                    return Ok(summary);
                }
            }
        }
    }
}

/// Explores one assignment alongside a heartbeat thread.
fn work(link: &Link<'_>, id: ClientId, pattern: &Pattern, job: Job, share: bool, summary: &mut ClientSummary) -> Result<JobEnd, ClientError> {
    let stop = Arc::new(AtomicBool::new(false));
    let done = Arc::new(AtomicBool::new(false));
    std::thread::scope(|scope| {
        let hb = {
            let (stop, done) = (Arc::clone(&stop), Arc::clone(&done));
            scope.spawn(move || heartbeat(link, id, &stop, &done))
        };
        let out = explore_job(link, id, pattern, job, share, &stop, summary);
        done.store(true, Ordering::Relaxed);
        let _ = hb.join();
        out
    })
}

fn heartbeat(link: &Link<'_>, id: ClientId, stop: &AtomicBool, done: &AtomicBool) {
    let slice = Duration::from_millis(10);
    loop {
        let mut waited = Duration::ZERO;
        while waited < link.cfg.heartbeat {
            if done.load(Ordering::Relaxed) {
                return;
            }
            std::thread::sleep(slice);
            waited += slice;
        }
        if done.load(Ordering::Relaxed) {
            return;
        }
        match link.send(&ClientMessage::Alive { client: id }) {
            Ok(ServerMessage::Ack) => {}
            other => {
                log::info!("heartbeat answered {other:?}; handing back work");
                stop.store(true, Ordering::Relaxed);
                return;
            }
        }
    }
}

fn explore_job(
    link: &Link<'_>,
    id: ClientId,
    pattern: &Pattern,
    job: Job,
    share: bool,
    stop: &AtomicBool,
    summary: &mut ClientSummary,
) -> Result<JobEnd, ClientError> {
    let mut current = job.clone();
    let mut worker = Worker::new(pattern, job, share);
    loop {
        if stop.load(Ordering::Relaxed) {
            return save_all(link, id, current, worker);
        }
        if link.cfg.crash_after.is_some_and(|n| summary.expansions >= n) {
            return Ok(JobEnd::Crashed);
        }
        let step = worker.step();
        summary.expansions += 1;
        if let Some(d) = link.cfg.throttle {
            std::thread::sleep(d);
        }
        match step {
            WorkerStep::Expanded => {}
            WorkerStep::Split { results, next, new_jobs } => {
                let msg = ClientMessage::NewJobs { client: id, results, current: current.clone(), next: next.clone(), new_jobs };
                match link.send(&msg)? {
                    ServerMessage::Ack => current = next,
                    _ => return Ok(JobEnd::Reported),
                }
            }
            WorkerStep::Done { results } => {
                summary.expansions -= 1;
                link.send(&ClientMessage::JobDone { client: id, results, current })?;
                return Ok(JobEnd::Reported);
            }
        }
    }
}

/// Hands the unexplored remainder back; the first pending job stays assigned.
fn save_all(link: &Link<'_>, id: ClientId, current: Job, worker: Worker<'_, pats_core::Tile>) -> Result<JobEnd, ClientError> {
    let (mut pending, results) = worker.into_checkpoint();
    let msg = if pending.is_empty() {
        ClientMessage::JobDone { client: id, results, current }
    } else {
        let new_jobs = pending.split_off(1);
        let next = pending.pop().expect("one pending job");
        ClientMessage::NewJobs { client: id, results, current, next, new_jobs }
    };
    link.send(&msg)?;
    Ok(JobEnd::Reported)
}
