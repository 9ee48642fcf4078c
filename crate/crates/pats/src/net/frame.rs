//! Line frames. A client sends either `Hello` or two lowercase hex lines
//! (message bytes, signature over them); the server answers one hex line.

use std::io::{self, BufRead, Read, Write};

pub const HELLO: &str = "Hello";

/// Longest accepted line, in characters.
pub const MAX_LINE: usize = 64 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClientFrame {
    Hello,
    Signed { message: Vec<u8>, signature: Vec<u8> },
}

#[derive(Debug, thiserror::Error)]
pub enum FrameError {
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("connection closed before a full frame")]
    Closed,
    #[error("line too long")]
    TooLong,
    #[error("bad hex: {0}")]
    Hex(#[from] hex::FromHexError),
}

pub fn read_line(r: &mut impl BufRead) -> Result<String, FrameError> {
    let mut line = String::new();
    let n = r.by_ref().take(MAX_LINE as u64 + 2).read_line(&mut line)?;
    if n == 0 {
        return Err(FrameError::Closed);
    }
    if n > MAX_LINE && !line.ends_with('\n') {
        return Err(FrameError::TooLong);
    }
    while line.ends_with('\n') || line.ends_with('\r') {
        line.pop();
    }
    Ok(line)
}

pub fn read_client_frame(r: &mut impl BufRead) -> Result<ClientFrame, FrameError> {
    let first = read_line(r)?;
    if first == HELLO {
        return Ok(ClientFrame::Hello);
    }
    let message = hex::decode(first)?;
    let signature = hex::decode(read_line(r)?)?;
    Ok(ClientFrame::Signed { message, signature })
}

pub fn write_client_frame(w: &mut impl Write, f: &ClientFrame) -> io::Result<()> {
    match f {
        ClientFrame::Hello => writeln!(w, "{HELLO}")?,
        ClientFrame::Signed { message, signature } => {
            writeln!(w, "{}", hex::encode(message))?;
            writeln!(w, "{}", hex::encode(signature))?;
        }
    }
    w.flush()
}

pub fn write_reply(w: &mut impl Write, bytes: &[u8]) -> io::Result<()> {
    writeln!(w, "{}", hex::encode(bytes))?;
    w.flush()
}

pub fn read_reply(r: &mut impl BufRead) -> Result<Vec<u8>, FrameError> {
    Ok(hex::decode(read_line(r)?)?)
}
