//! Job server: accepts connections, verifies signatures, and applies the state
//! transition under one lock.

use std::fs::OpenOptions;
use std::io::{BufReader, BufWriter, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;
use std::time::Duration;

use pats_core::dist::{ClientMessage, PublicKey, ServerMessage, ServerState, Timeouts};
use pats_core::wire;

use super::frame::{self, ClientFrame};
use crate::crypto;

#[derive(Clone, Debug)]
pub struct ServerConfig {
    pub bind: SocketAddr,
    pub max_threads: usize,
    pub log_file: Option<PathBuf>,
    pub state_path: Option<PathBuf>,
    pub save_interval: Duration,
    pub timeouts: Timeouts,
    /// Per-connection read timeout.
    pub io_timeout: Duration,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig {
            bind: SocketAddr::from(([0, 0, 0, 0], super::DEFAULT_PORT)),
            max_threads: 20,
            log_file: None,
            state_path: None,
            save_interval: Duration::from_secs(60),
            timeouts: Timeouts::default(),
            io_timeout: Duration::from_secs(60),
        }
    }
}

struct Shared {
    state: Mutex<ServerState>,
    stop: AtomicBool,
    active: AtomicUsize,
    log: Option<Mutex<std::fs::File>>,
    timeouts: Timeouts,
    io_timeout: Duration,
}

impl Shared {
    fn log(&self, line: &str) {
        log::debug!("{line}");
        if let Some(f) = &self.log {
            let mut f = f.lock().expect("log lock");
            let _ = writeln!(f, "{:.3} {line}", super::now());
        }
    }
}

pub struct ServerHandle {
    addr: SocketAddr,
    shared: Arc<Shared>,
    state_path: Option<PathBuf>,
    threads: Vec<JoinHandle<()>>,
}

/// Writes the snapshot to a temporary file, moves the old snapshot to
/// `<path>.last`, then moves the new one into place.
pub fn save_state(state: &ServerState, path: &Path) -> std::io::Result<()> {
    let bytes = wire::encode_state(state).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
    let tmp = with_suffix(path, ".tmp");
    std::fs::write(&tmp, bytes)?;
    if path.exists() {
        std::fs::rename(path, with_suffix(path, ".last"))?;
    }
    std::fs::rename(tmp, path)
}

pub fn load_state(path: &Path) -> std::io::Result<ServerState> {
    let bytes = std::fs::read(path)?;
    wire::decode_state(&bytes).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn kind(m: &ClientMessage) -> &'static str {
    match m {
        ClientMessage::GetJob { .. } => "GetJob",
        ClientMessage::JobDone { .. } => "JobDone",
        ClientMessage::NewJobs { .. } => "NewJobs",
        ClientMessage::Alive { .. } => "Alive",
    }
}

fn reply_kind(m: &ServerMessage) -> &'static str {
    match m {
        ServerMessage::Job { .. } => "Job",
        ServerMessage::Finished => "Finished",
        ServerMessage::Ack => "Ack",
        ServerMessage::Die => "Die",
    }
}

/// Handles one already-read frame; returns the reply bytes.
fn respond(shared: &Shared, host: &str, f: ClientFrame) -> Vec<u8> {
    let (message, signature) = match f {
        ClientFrame::Hello => {
            let id = shared.state.lock().expect("state lock").hello();
            shared.log(&format!("{host} Hello -> {id}"));
            return wire::encode_id(id);
        }
        ClientFrame::Signed { message, signature } => (message, signature),
    };
    let die = || wire::encode_server(&ServerMessage::Die).expect("small message");
    let msg = match wire::decode_client(&message) {
        Ok(m) => m,
        Err(e) => {
            shared.log(&format!("{host} undecodable message ({e}) -> Die"));
            return die();
        }
    };
    let key: Option<PublicKey> = shared.state.lock().expect("state lock").signing_key(&msg).cloned();
    let verified = key.is_some_and(|k| crypto::verify(&k, &message, &signature));
    if !verified {
        shared.log(&format!("{host} {} from {} with bad signature or key -> Die", kind(&msg), msg.client()));
        return die();
    }
    let label = kind(&msg);
    let client = msg.client();
    let reply = shared.state.lock().expect("state lock").answer(super::now(), host, msg);
    shared.log(&format!("{host} {label} from {client} -> {}", reply_kind(&reply)));
    wire::encode_server(&reply).unwrap_or_else(|_| die())
}

fn handle(shared: &Shared, stream: TcpStream) {
    let host = stream.peer_addr().map_or_else(|_| "unknown".to_string(), |a| a.ip().to_string());
    let _ = stream.set_nonblocking(false);
    let _ = stream.set_read_timeout(Some(shared.io_timeout));
    let _ = stream.set_write_timeout(Some(shared.io_timeout));
    let Ok(read_half) = stream.try_clone() else { return };
    let mut reader = BufReader::new(read_half);
    let reply = match frame::read_client_frame(&mut reader) {
        Ok(f) => respond(shared, &host, f),
        Err(e) => {
            shared.log(&format!("{host} malformed frame ({e}) -> Die"));
            wire::encode_server(&ServerMessage::Die).expect("small message")
        }
    };
    let mut w = BufWriter::new(stream);
    if let Err(e) = frame::write_reply(&mut w, &reply) {
        shared.log(&format!("{host} reply failed: {e}"));
    }
}

/// Sleeps up to `d` in short slices; false once `stop` is set.
fn pause(stop: &AtomicBool, d: Duration) -> bool {
    let slice = Duration::from_millis(20);
    let mut left = d;
    while !left.is_zero() {
        if stop.load(Ordering::Relaxed) {
            return false;
        }
        let s = left.min(slice);
        std::thread::sleep(s);
        left -= s;
    }
    !stop.load(Ordering::Relaxed)
}

impl ServerHandle {
    /// Binds and starts the accept, cleanup and save threads.
    pub fn spawn(config: ServerConfig, state: ServerState) -> std::io::Result<ServerHandle> {
        let listener = TcpListener::bind(config.bind)?;
        listener.set_nonblocking(true)?;
        let addr = listener.local_addr()?;
        let log = match &config.log_file {
            Some(p) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(p)?)),
            None => None,
        };
        let shared = Arc::new(Shared {
            state: Mutex::new(state),
            stop: AtomicBool::new(false),
            active: AtomicUsize::new(0),
            log,
            timeouts: config.timeouts,
            io_timeout: config.io_timeout,
        });
        shared.log(&format!("listening on {addr}"));
        let mut threads = Vec::new();

        let sh = Arc::clone(&shared);
        let max_threads = config.max_threads.max(1);
        threads.push(std::thread::spawn(move || {
            while !sh.stop.load(Ordering::Relaxed) {
                if sh.active.load(Ordering::Acquire) >= max_threads {
                    std::thread::sleep(Duration::from_millis(2));
                    continue;
                }
                match listener.accept() {
                    Ok((stream, _)) => {
                        sh.active.fetch_add(1, Ordering::AcqRel);
                        let conn = Arc::clone(&sh);
                        std::thread::spawn(move || {
                            handle(&conn, stream);
                            conn.active.fetch_sub(1, Ordering::AcqRel);
                        });
                    }
                    Err(e) if e.kind() == std::io::ErrorKind::WouldBlock => std::thread::sleep(Duration::from_millis(2)),
                    Err(e) => {
                        log::warn!("accept: {e}");
                        std::thread::sleep(Duration::from_millis(50));
                    }
                }
            }
        }));

        let sh = Arc::clone(&shared);
        threads.push(std::thread::spawn(move || {
            let every = Duration::from_secs_f64(sh.timeouts.cleanup_every.max(0.001));
            while pause(&sh.stop, every) {
                sh.state.lock().expect("state lock").cleanup(super::now(), &sh.timeouts);
            }
        }));

        if let Some(path) = config.state_path.clone() {
            let sh = Arc::clone(&shared);
            let every = config.save_interval;
            threads.push(std::thread::spawn(move || {
                while pause(&sh.stop, every) {
                    let snap = sh.state.lock().expect("state lock").clone();
                    if let Err(e) = save_state(&snap, &path) {
                        sh.log(&format!("saving state failed: {e}"));
                    }
                }
            }));
        }
        Ok(ServerHandle { addr, shared, state_path: config.state_path, threads })
    }

    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn snapshot(&self) -> ServerState {
        self.shared.state.lock().expect("state lock").clone()
    }

    pub fn is_finished(&self) -> bool {
        self.shared.state.lock().expect("state lock").is_finished()
    }

    /// Blocks until no job is pending or assigned, or the timeout passes.
    pub fn wait_finished(&self, timeout: Duration) -> bool {
        let deadline = std::time::Instant::now() + timeout;
        while std::time::Instant::now() < deadline {
            if self.is_finished() {
                return true;
            }
            std::thread::sleep(Duration::from_millis(10));
        }
        self.is_finished()
    }

    /// Stops all threads, saves a final snapshot and returns the state.
    pub fn shutdown(mut self) -> ServerState {
        self.shared.stop.store(true, Ordering::Relaxed);
        for t in self.threads.drain(..) {
            let _ = t.join();
        }
        while self.shared.active.load(Ordering::Acquire) > 0 {
            std::thread::sleep(Duration::from_millis(2));
        }
        let state = self.snapshot();
        if let Some(p) = &self.state_path {
            if let Err(e) = save_state(&state, p) {
                self.shared.log(&format!("saving state failed: {e}"));
            }
        }
        state
    }
}
