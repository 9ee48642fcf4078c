//! TCP transport for the job server: one connection per message exchange.

pub mod client;
pub mod frame;
pub mod server;

pub const DEFAULT_PORT: u16 = 5129;

/// Seconds since the Unix epoch; the clock used for assignment timestamps.
pub fn now() -> f64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}
