//! Loopback server and clients.

use std::io::{BufReader, BufWriter};
use std::net::{SocketAddr, TcpStream};
use std::sync::OnceLock;
use std::time::Duration;

use pats::crypto::KeyPair;
use pats::net::client::{self, ClientConfig, ClientSummary};
use pats::net::frame::{self, ClientFrame};
use pats::net::server::{ServerConfig, ServerHandle};
use pats_core::dist::{ClientMessage, ServerMessage, ServerState, Timeouts};
use pats_core::search::{isomorphism_classes, Job, ResultRecord};
use pats_core::{wire, Pattern};

/// Two authorized keys and one stranger, generated once per test binary.
pub fn keys() -> &'static [KeyPair; 3] {
    static KEYS: OnceLock<[KeyPair; 3]> = OnceLock::new();
    KEYS.get_or_init(|| std::array::from_fn(|_| KeyPair::generate_bits(1024).unwrap()))
}

pub fn fast_timeouts() -> Timeouts {
    Timeouts { silence: 0.6, max_age: 0.3, cleanup_every: 0.05, heartbeat: 0.05 }
}

pub fn start(pattern: &Pattern, len: usize, timeouts: Timeouts) -> ServerHandle {
    let k = keys();
    let st = ServerState::new(vec![Job::root(pattern, len).unwrap()], vec![k[0].wire_public(), k[1].wire_public()]);
    let cfg = ServerConfig { bind: SocketAddr::from(([127, 0, 0, 1], 0)), timeouts, io_timeout: Duration::from_secs(10), ..ServerConfig::default() };
    ServerHandle::spawn(cfg, st).unwrap()
}

pub fn client_config(addr: SocketAddr, t: &Timeouts) -> ClientConfig {
    ClientConfig {
        server: addr.to_string(),
        heartbeat: Duration::from_secs_f64(t.heartbeat),
        die_delay: Duration::from_millis(20),
        retry_min: Duration::from_millis(10),
        retry_max: Duration::from_millis(100),
        max_retries: 20,
        io_timeout: Duration::from_secs(10),
        crash_after: None,
        throttle: None,
    }
}

pub fn spawn_client(cfg: ClientConfig, key: usize, pattern: &Pattern) -> std::thread::JoinHandle<ClientSummary> {
    let p = pattern.clone();
    std::thread::spawn(move || client::run(&cfg, &keys()[key], &p).unwrap())
}

pub fn classes(st: &ServerState) -> Vec<ResultRecord> {
    isomorphism_classes(st.results.iter().map(|(_, r)| r.clone()).collect())
}

pub struct Run {
    pub state: ServerState,
    pub summaries: Vec<ClientSummary>,
}

/// Runs `clients` workers against a fresh server until it finishes.
pub fn run(pattern: &Pattern, len: usize, clients: usize, throttle: Option<Duration>) -> Run {
    let t = fast_timeouts();
    let server = start(pattern, len, Timeouts { max_age: 3600.0, ..t });
    let handles: Vec<_> = (0..clients)
        .map(|i| {
            let cfg = ClientConfig { throttle, ..client_config(server.addr(), &t) };
            spawn_client(cfg, i % 2, pattern)
        })
        .collect();
    let summaries = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(server.wait_finished(Duration::from_secs(60)));
    Run { state: server.shutdown(), summaries }
}

/// One client crashes mid-job; a second one starts after the crash.
pub fn run_with_crash(pattern: &Pattern, len: usize) -> Run {
    let t = fast_timeouts();
    let server = start(pattern, len, t);
    let crash = ClientConfig { crash_after: Some(40), throttle: Some(Duration::from_millis(2)), ..client_config(server.addr(), &t) };
    let first = spawn_client(crash, 0, pattern).join().unwrap();
    assert!(first.crashed);
    assert_eq!(server.snapshot().ongoing.len(), 1, "crashed client still holds its job");
    let second = spawn_client(client_config(server.addr(), &t), 1, pattern).join().unwrap();
    assert!(server.wait_finished(Duration::from_secs(60)));
    Run { state: server.shutdown(), summaries: vec![first, second] }
}

/// Sends one raw frame and decodes the reply.
pub fn exchange(addr: SocketAddr, f: &ClientFrame) -> Vec<u8> {
    let stream = TcpStream::connect(addr).unwrap();
    let mut w = BufWriter::new(stream.try_clone().unwrap());
    frame::write_client_frame(&mut w, f).unwrap();
    drop(w);
    frame::read_reply(&mut BufReader::new(stream)).unwrap()
}

pub fn send_raw_line(addr: SocketAddr, line: &str) -> Vec<u8> {
    use std::io::Write;
    let mut stream = TcpStream::connect(addr).unwrap();
    writeln!(stream, "{line}").unwrap();
    stream.shutdown(std::net::Shutdown::Write).unwrap();
    frame::read_reply(&mut BufReader::new(stream)).unwrap()
}

pub fn signed(msg: &ClientMessage, key: &KeyPair) -> ClientFrame {
    let message = wire::encode_client(msg).unwrap();
    let signature = key.sign(&message);
    ClientFrame::Signed { message, signature }
}

pub fn reply(bytes: &[u8]) -> ServerMessage {
    wire::decode_server(bytes).unwrap()
}

/// Jobs still to explore, ignoring kill counts and timestamps.
pub fn open_tasks(st: &ServerState) -> Vec<Job> {
    let mut v: Vec<Job> = st.open_jobs().into_iter().map(|mut j| {
        j.kill_count = 0;
        j
    }).collect();
    v.sort();
    v
}

/// Tampered, unauthorized and malformed requests; returns how many were answered `Die`
/// with the open tasks and the whole state unchanged.
pub fn hostile_requests(pattern: &Pattern, len: usize) -> (usize, usize) {
    let server = start(pattern, len, Timeouts::default());
    let addr = server.addr();
    let k = keys();
    let id = wire::decode_id(&exchange(addr, &ClientFrame::Hello)).unwrap();
    let mut tries = 0;
    let mut rejected = 0;
    let mut attempt = |f: Option<ClientFrame>, raw: Option<&str>| {
        let before = server.snapshot();
        let bytes = match (f, raw) {
            (Some(f), _) => exchange(addr, &f),
            (None, Some(line)) => send_raw_line(addr, line),
            _ => unreachable!(),
        };
        let after = server.snapshot();
        tries += 1;
        if reply(&bytes) == ServerMessage::Die && after == before && open_tasks(&after) == open_tasks(&before) {
            rejected += 1;
        }
    };
    // a stranger's key, self-signed
    attempt(Some(signed(&ClientMessage::GetJob { client: id, key: k[2].wire_public() }, &k[2])), None);
    // an authorized key claimed, signed by the stranger
    attempt(Some(signed(&ClientMessage::GetJob { client: id, key: k[0].wire_public() }, &k[2])), None);
    // a valid message altered after signing
    let ClientFrame::Signed { mut message, signature } = signed(&ClientMessage::GetJob { client: id, key: k[0].wire_public() }, &k[0]) else { unreachable!() };
    let last = message.len() - 1;
    message[last] ^= 1;
    attempt(Some(ClientFrame::Signed { message, signature }), None);
    // truncated signature
    let ClientFrame::Signed { message, mut signature } = signed(&ClientMessage::GetJob { client: id, key: k[0].wire_public() }, &k[0]) else { unreachable!() };
    signature.pop();
    attempt(Some(ClientFrame::Signed { message, signature }), None);
    // undecodable payload and non-hex garbage
    attempt(Some(ClientFrame::Signed { message: vec![9, 9, 9], signature: k[0].sign(&[9, 9, 9]) }), None);
    attempt(None, Some("not a frame"));
    // messages for an assignment that does not exist
    let root = Job::root(pattern, len).unwrap();
    attempt(Some(signed(&ClientMessage::JobDone { client: id, results: vec![], current: root.clone() }, &k[0])), None);
    attempt(Some(signed(&ClientMessage::Alive { client: id }, &k[0])), None);
    // now a real assignment, then the stranger impersonates its owner
    let granted = reply(&exchange(addr, &signed(&ClientMessage::GetJob { client: id, key: k[0].wire_public() }, &k[0])));
    assert!(matches!(granted, ServerMessage::Job { .. }));
    attempt(Some(signed(&ClientMessage::JobDone { client: id, results: vec![], current: root.clone() }, &k[2])), None);
    attempt(Some(signed(&ClientMessage::JobDone { client: id, results: vec![], current: root }, &k[1])), None);
    drop(server.shutdown());
    (rejected, tries)
}
