//! Canonical big-endian encoding of jobs, results, protocol messages and the
//! server state.
//!
//! ```text
//! job     = 0x00 x:u16 y:u16 kill:u16 len:u8 tile:u32*len w:u16 h:u16 cell:i8*(w*h)
//! result  = 0x01 len:u8 tile:u32*len w:u16 h:u16 cell:i8*(w*h)
//! key     = n:bytes16 e:bytes16          (bytes16 = len:u16 byte*len)
//! list<T> = count:u16 T*count
//! client  = 0 id:u64 key | 1 id:u64 list<result> job | 2 id:u64 list<result> job job list<job> | 3 id:u64
//! server  = 0 share:u8 job | 1 | 2 | 3
//! ```

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::assembly::Assembly;
use crate::dist::{ClientId, ClientMessage, Ongoing, PublicKey, ServerMessage, ServerState};
use crate::search::{Job, ResultRecord};
use crate::tile::{Tile, TileFields, TileSet};

const JOB_FLAG: u8 = 0;
const RESULT_FLAG: u8 = 1;
const STATE_MAGIC: &[u8; 4] = b"PATS";
const STATE_VERSION: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WireError {
    Truncated,
    Trailing(usize),
    UnknownTag(u8),
    Invalid(&'static str),
    TooLong(&'static str),
}

impl fmt::Display for WireError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WireError::Truncated => f.write_str("input ends early"),
            WireError::Trailing(n) => write!(f, "{n} trailing bytes"),
            WireError::UnknownTag(t) => write!(f, "unknown tag {t}"),
            WireError::Invalid(what) => write!(f, "invalid {what}"),
            WireError::TooLong(what) => write!(f, "{what} too long to encode"),
        }
    }
}

impl core::error::Error for WireError {}

pub type WireResult<T> = Result<T, WireError>;

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Writer::default()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    pub fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    pub fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    pub fn f64(&mut self, v: f64) {
        self.u64(v.to_bits());
    }

    fn len16(&mut self, n: usize, what: &'static str) -> WireResult<()> {
        self.u16(u16::try_from(n).map_err(|_| WireError::TooLong(what))?);
        Ok(())
    }

    fn len32(&mut self, n: usize, what: &'static str) -> WireResult<()> {
        self.u32(u32::try_from(n).map_err(|_| WireError::TooLong(what))?);
        Ok(())
    }

    pub fn bytes16(&mut self, b: &[u8]) -> WireResult<()> {
        self.len16(b.len(), "byte string")?;
        self.buf.extend_from_slice(b);
        Ok(())
    }

    fn tiles_and_assembly(&mut self, tiles: &TileSet, a: &Assembly) -> WireResult<()> {
        self.u8(u8::try_from(tiles.len()).map_err(|_| WireError::TooLong("tile set"))?);
        for t in tiles {
            self.u32(t.bits());
        }
        self.len16(a.width(), "assembly width")?;
        self.len16(a.height(), "assembly height")?;
        self.buf.extend(a.cells().iter().map(|&c| c as u8));
        Ok(())
    }

    pub fn job(&mut self, j: &Job) -> WireResult<()> {
        self.u8(JOB_FLAG);
        self.u16(j.x);
        self.u16(j.y);
        self.u16(j.kill_count);
        self.tiles_and_assembly(&j.tiles, &j.assembly)
    }

    pub fn result(&mut self, r: &ResultRecord) -> WireResult<()> {
        self.u8(RESULT_FLAG);
        self.tiles_and_assembly(&r.tiles, &r.assembly)
    }

    pub fn key(&mut self, k: &PublicKey) -> WireResult<()> {
        self.bytes16(&k.modulus)?;
        self.bytes16(&k.exponent)
    }

    fn jobs16(&mut self, v: &[Job]) -> WireResult<()> {
        self.len16(v.len(), "job list")?;
        v.iter().try_for_each(|j| self.job(j))
    }

    fn results16(&mut self, v: &[ResultRecord]) -> WireResult<()> {
        self.len16(v.len(), "result list")?;
        v.iter().try_for_each(|r| self.result(r))
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn finish(self) -> WireResult<()> {
        match self.buf.len() - self.pos {
            0 => Ok(()),
            n => Err(WireError::Trailing(n)),
        }
    }

    fn take(&mut self, n: usize) -> WireResult<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len()).ok_or(WireError::Truncated)?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    pub fn u8(&mut self) -> WireResult<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u16(&mut self) -> WireResult<u16> {
        Ok(u16::from_be_bytes(self.take(2)?.try_into().expect("2 bytes")))
    }

    pub fn u32(&mut self) -> WireResult<u32> {
        Ok(u32::from_be_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    pub fn u64(&mut self) -> WireResult<u64> {
        Ok(u64::from_be_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    pub fn f64(&mut self) -> WireResult<f64> {
        Ok(f64::from_bits(self.u64()?))
    }

    pub fn bytes16(&mut self) -> WireResult<Vec<u8>> {
        let n = usize::from(self.u16()?);
        Ok(self.take(n)?.to_vec())
    }

    fn tiles_and_assembly(&mut self) -> WireResult<(TileSet, Assembly)> {
        let len = usize::from(self.u8()?);
        if len > Tile::CAPACITY {
            return Err(WireError::Invalid("tile count"));
        }
        let tiles = (0..len)
            .map(|_| Tile::from_bits(self.u32()?).ok_or(WireError::Invalid("packed tile")))
            .collect::<WireResult<TileSet>>()?;
        let w = usize::from(self.u16()?);
        let h = usize::from(self.u16()?);
        let cells = self.take(w * h)?.iter().map(|&b| b as i8).collect();
        let a = Assembly::from_cells(w, h, cells, len).map_err(|_| WireError::Invalid("assembly"))?;
        Ok((tiles, a))
    }

    fn flag(&mut self, want: u8) -> WireResult<()> {
        match self.u8()? {
            f if f == want => Ok(()),
            f => Err(WireError::UnknownTag(f)),
        }
    }

    pub fn job(&mut self) -> WireResult<Job> {
        self.flag(JOB_FLAG)?;
        let (x, y, kill_count) = (self.u16()?, self.u16()?, self.u16()?);
        let (tiles, assembly) = self.tiles_and_assembly()?;
        if usize::from(x) >= assembly.width() || usize::from(y) >= assembly.height() {
            return Err(WireError::Invalid("job position"));
        }
        Ok(Job { x, y, kill_count, tiles, assembly })
    }

    pub fn result(&mut self) -> WireResult<ResultRecord> {
        self.flag(RESULT_FLAG)?;
        let (tiles, assembly) = self.tiles_and_assembly()?;
        if !assembly.is_total() {
            return Err(WireError::Invalid("partial result assembly"));
        }
        Ok(ResultRecord { tiles, assembly })
    }

    pub fn key(&mut self) -> WireResult<PublicKey> {
        Ok(PublicKey { modulus: self.bytes16()?, exponent: self.bytes16()? })
    }

    fn list16<T>(&mut self, mut item: impl FnMut(&mut Self) -> WireResult<T>) -> WireResult<Vec<T>> {
        let n = usize::from(self.u16()?);
        (0..n).map(|_| item(self)).collect()
    }

    fn list32<T>(&mut self, mut item: impl FnMut(&mut Self) -> WireResult<T>) -> WireResult<Vec<T>> {
        let n = self.u32()? as usize;
        // every item takes at least one byte
        if n > self.buf.len() - self.pos {
            return Err(WireError::Truncated);
        }
        (0..n).map(|_| item(self)).collect()
    }
}

fn whole<'a, T>(bytes: &'a [u8], f: impl FnOnce(&mut Reader<'a>) -> WireResult<T>) -> WireResult<T> {
    let mut r = Reader::new(bytes);
    let v = f(&mut r)?;
    r.finish()?;
    Ok(v)
}

pub fn encode_job(j: &Job) -> WireResult<Vec<u8>> {
    let mut w = Writer::new();
    w.job(j)?;
    Ok(w.into_bytes())
}

pub fn decode_job(b: &[u8]) -> WireResult<Job> {
    whole(b, Reader::job)
}

pub fn encode_result(r: &ResultRecord) -> WireResult<Vec<u8>> {
    let mut w = Writer::new();
    w.result(r)?;
    Ok(w.into_bytes())
}

pub fn decode_result(b: &[u8]) -> WireResult<ResultRecord> {
    whole(b, Reader::result)
}

/// Whether an encoded item is a result rather than a job.
pub fn is_result(b: &[u8]) -> bool {
    b.first() == Some(&RESULT_FLAG)
}

pub fn encode_client(m: &ClientMessage) -> WireResult<Vec<u8>> {
    let mut w = Writer::new();
    match m {
        ClientMessage::GetJob { client, key } => {
            w.u8(0);
            w.u64(*client);
            w.key(key)?;
        }
        ClientMessage::JobDone { client, results, current } => {
            w.u8(1);
            w.u64(*client);
            w.results16(results)?;
            w.job(current)?;
        }
        ClientMessage::NewJobs { client, results, current, next, new_jobs } => {
            w.u8(2);
            w.u64(*client);
            w.results16(results)?;
            w.job(current)?;
            w.job(next)?;
            w.jobs16(new_jobs)?;
        }
        ClientMessage::Alive { client } => {
            w.u8(3);
            w.u64(*client);
        }
    }
    Ok(w.into_bytes())
}

pub fn decode_client(b: &[u8]) -> WireResult<ClientMessage> {
    whole(b, |r| {
        let tag = r.u8()?;
        let client = r.u64()?;
        Ok(match tag {
            0 => ClientMessage::GetJob { client, key: r.key()? },
            1 => ClientMessage::JobDone { client, results: r.list16(Reader::result)?, current: r.job()? },
            2 => ClientMessage::NewJobs {
                client,
                results: r.list16(Reader::result)?,
                current: r.job()?,
                next: r.job()?,
                new_jobs: r.list16(Reader::job)?,
            },
            3 => ClientMessage::Alive { client },
            t => return Err(WireError::UnknownTag(t)),
        })
    })
}

pub fn encode_server(m: &ServerMessage) -> WireResult<Vec<u8>> {
    let mut w = Writer::new();
    match m {
        ServerMessage::Job { share, job } => {
            w.u8(0);
            w.u8(u8::from(*share));
            w.job(job)?;
        }
        ServerMessage::Finished => w.u8(1),
        ServerMessage::Ack => w.u8(2),
        ServerMessage::Die => w.u8(3),
    }
    Ok(w.into_bytes())
}

pub fn decode_server(b: &[u8]) -> WireResult<ServerMessage> {
    whole(b, |r| {
        Ok(match r.u8()? {
            0 => {
                let share = match r.u8()? {
                    0 => false,
                    1 => true,
                    _ => return Err(WireError::Invalid("share flag")),
                };
                ServerMessage::Job { share, job: r.job()? }
            }
            1 => ServerMessage::Finished,
            2 => ServerMessage::Ack,
            3 => ServerMessage::Die,
            t => return Err(WireError::UnknownTag(t)),
        })
    })
}

pub fn encode_id(id: ClientId) -> Vec<u8> {
    id.to_be_bytes().to_vec()
}

pub fn decode_id(b: &[u8]) -> WireResult<ClientId> {
    whole(b, Reader::u64)
}

fn string16(w: &mut Writer, s: &str) -> WireResult<()> {
    w.bytes16(s.as_bytes())
}

fn read_string16(r: &mut Reader<'_>) -> WireResult<String> {
    String::from_utf8(r.bytes16()?).map_err(|_| WireError::Invalid("utf-8 host"))
}

pub fn encode_state(st: &ServerState) -> WireResult<Vec<u8>> {
    let mut w = Writer::new();
    w.buf.extend_from_slice(STATE_MAGIC);
    w.u8(STATE_VERSION);
    w.len32(st.jobs.len(), "job queue")?;
    for (d, j) in &st.jobs {
        w.u32(*d);
        w.job(j)?;
    }
    w.len32(st.ongoing.len(), "ongoing map")?;
    for (id, o) in &st.ongoing {
        w.u64(*id);
        string16(&mut w, &o.host)?;
        w.key(&o.key)?;
        w.job(&o.job)?;
        w.f64(o.started);
        w.f64(o.last_seen);
    }
    w.len32(st.unemployed.len(), "unemployed set")?;
    st.unemployed.iter().for_each(|&id| w.u64(id));
    w.len32(st.results.len(), "results")?;
    for (host, r) in &st.results {
        string16(&mut w, host)?;
        w.result(r)?;
    }
    w.u64(st.next_id);
    w.u64(st.killings);
    w.u64(st.solved);
    w.u64(st.assigned);
    w.len32(st.authorized_keys.len(), "key list")?;
    st.authorized_keys.iter().try_for_each(|k| w.key(k))?;
    Ok(w.into_bytes())
}

pub fn decode_state(b: &[u8]) -> WireResult<ServerState> {
    whole(b, |r| {
        if r.take(4)? != STATE_MAGIC {
            return Err(WireError::Invalid("state magic"));
        }
        if r.u8()? != STATE_VERSION {
            return Err(WireError::Invalid("state version"));
        }
        let jobs: BTreeSet<(u32, Job)> = r.list32(|r| Ok((r.u32()?, r.job()?)))?.into_iter().collect();
        let ongoing: BTreeMap<ClientId, Ongoing> = r
            .list32(|r| {
                let id = r.u64()?;
                let host = read_string16(r)?;
                let key = r.key()?;
                let job = r.job()?;
                Ok((id, Ongoing { host, key, job, started: r.f64()?, last_seen: r.f64()? }))
            })?
            .into_iter()
            .collect();
        let unemployed = r.list32(Reader::u64)?.into_iter().collect();
        let results = r.list32(|r| Ok((read_string16(r)?, r.result()?)))?;
        let (next_id, killings, solved, assigned) = (r.u64()?, r.u64()?, r.u64()?, r.u64()?);
        let authorized_keys = r.list32(Reader::key)?;
        Ok(ServerState { jobs, ongoing, unemployed, results, next_id, killings, solved, assigned, authorized_keys })
    })
}
