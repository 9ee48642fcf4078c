//! Server and client settings: a TOML file with `[server]` and `[client]`
//! tables, then `PATS_*` environment overrides.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;

use crate::net::client::ClientConfig;
use crate::net::server::ServerConfig;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{key}: cannot parse {value:?}")]
    Value { key: String, value: String },
    #[error("missing setting {0}")]
    Missing(&'static str),
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ServerSection {
    pub bind: Option<String>,
    pub max_threads: Option<usize>,
    pub log_file: Option<PathBuf>,
    pub state_path: Option<PathBuf>,
    pub save_interval: Option<f64>,
    pub silence: Option<f64>,
    pub max_age: Option<f64>,
    pub cleanup_every: Option<f64>,
    /// Public key files allowed to request work.
    #[serde(default)]
    pub authorized_keys: Vec<PathBuf>,
    pub pattern: Option<PathBuf>,
    /// Where the result classes are written once the search finishes.
    pub results: Option<PathBuf>,
    pub tiles: Option<usize>,
    /// Depth of the initial job frontier.
    pub depth: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ClientSection {
    pub server: Option<String>,
    pub private_key: Option<PathBuf>,
    pub pattern: Option<PathBuf>,
    pub heartbeat: Option<f64>,
    pub die_delay: Option<f64>,
    pub retry_min: Option<f64>,
    pub retry_max: Option<f64>,
    pub max_retries: Option<u32>,
    pub crash_after: Option<u64>,
    pub throttle_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub server: ServerSection,
    #[serde(default)]
    pub client: ClientSection,
}

fn parse_env<T: std::str::FromStr>(key: &str, get: &dyn Fn(&str) -> Option<String>) -> Result<Option<T>, ConfigError> {
    match get(key) {
        None => Ok(None),
        Some(v) => v.trim().parse().map(Some).map_err(|_| ConfigError::Value { key: key.to_string(), value: v }),
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        let mut c = Config::parse(&text)?;
        c.resolve_paths(path.parent().unwrap_or(Path::new(".")));
        Ok(c)
    }

    /// Relative paths in the file are taken relative to the file's directory.
    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        let s = &mut self.server;
        [&mut s.log_file, &mut s.state_path, &mut s.pattern, &mut s.results].into_iter().flatten().for_each(fix);
        s.authorized_keys.iter_mut().for_each(fix);
        let c = &mut self.client;
        [&mut c.private_key, &mut c.pattern].into_iter().flatten().for_each(fix);
    }

    pub fn apply_env(&mut self) -> Result<(), ConfigError> {
        self.apply_env_from(&|k| std::env::var(k).ok())
    }

    pub fn apply_env_from(&mut self, get: &dyn Fn(&str) -> Option<String>) -> Result<(), ConfigError> {
        let s = &mut self.server;
        if let Some(v) = get("PATS_BIND") {
            s.bind = Some(v);
        }
        s.silence = parse_env("PATS_SILENCE", get)?.or(s.silence);
        s.max_age = parse_env("PATS_MAX_AGE", get)?.or(s.max_age);
        s.cleanup_every = parse_env("PATS_CLEANUP_EVERY", get)?.or(s.cleanup_every);
        s.save_interval = parse_env("PATS_SAVE_INTERVAL", get)?.or(s.save_interval);
        let c = &mut self.client;
        if let Some(v) = get("PATS_SERVER") {
            c.server = Some(v);
        }
        c.heartbeat = parse_env("PATS_HEARTBEAT", get)?.or(c.heartbeat);
        c.die_delay = parse_env("PATS_DIE_DELAY", get)?.or(c.die_delay);
        Ok(())
    }

    pub fn server_config(&self) -> Result<ServerConfig, ConfigError> {
        let s = &self.server;
        let mut out = ServerConfig::default();
        if let Some(b) = &s.bind {
            out.bind = b.parse::<SocketAddr>().map_err(|_| ConfigError::Value { key: "server.bind".into(), value: b.clone() })?;
        }
        out.max_threads = s.max_threads.unwrap_or(out.max_threads);
        out.log_file = s.log_file.clone();
        out.state_path = s.state_path.clone();
        if let Some(v) = s.save_interval {
            out.save_interval = secs("server.save_interval", v)?;
        }
        let t = &mut out.timeouts;
        t.silence = s.silence.unwrap_or(t.silence);
        t.max_age = s.max_age.unwrap_or(t.max_age);
        t.cleanup_every = s.cleanup_every.unwrap_or(t.cleanup_every);
        Ok(out)
    }

    pub fn client_config(&self) -> Result<ClientConfig, ConfigError> {
        let c = &self.client;
        let mut out = ClientConfig::default();
        if let Some(s) = &c.server {
            out.server = s.clone();
        }
        if let Some(v) = c.heartbeat {
            out.heartbeat = secs("client.heartbeat", v)?;
        }
        if let Some(v) = c.die_delay {
            out.die_delay = secs("client.die_delay", v)?;
        }
        if let Some(v) = c.retry_min {
            out.retry_min = secs("client.retry_min", v)?;
        }
        if let Some(v) = c.retry_max {
            out.retry_max = secs("client.retry_max", v)?;
        }
        out.max_retries = c.max_retries.unwrap_or(out.max_retries);
        out.crash_after = c.crash_after;
        out.throttle = c.throttle_ms.map(Duration::from_millis);
        Ok(out)
    }
}

fn secs(key: &str, v: f64) -> Result<Duration, ConfigError> {
    Duration::try_from_secs_f64(v).map_err(|_| ConfigError::Value { key: key.to_string(), value: v.to_string() })
}
