//! Netpbm greymap decoding, ASCII (`P2`) and binary (`P5`), `maxval <= 255`.

use crate::error::{Error, Result};

/// Refuse headers claiming more pixels than this.
const MAX_PIXELS: usize = 1 << 28;

/// Decoded greymap, pixels in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgmImage {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u8>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::UnsupportedFormat(msg.into())
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments running to end of line.
    fn skip_separators(&mut self) {
        while let Some(&b) = self.buf.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.buf.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        while self.buf.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(bad(format!("expected {what}")));
        }
        if self
            .buf
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            return Err(bad(format!("malformed {what}")));
        }
        std::str::from_utf8(&self.buf[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(format!("{what} out of range")))
    }
}

pub fn parse_pgm(bytes: &[u8]) -> Result<PgmImage> {
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => return Err(bad("not a P2/P5 greymap")),
    };
    let mut cur = Cursor { buf: bytes, pos: 2 };
    if cur
        .buf
        .get(2)
        .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
    {
        return Err(bad("malformed magic number"));
    }
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(bad("zero image dimension"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(bad(format!("maxval {maxval} not in 1..=255")));
    }
    let n = width
        .checked_mul(height)
        .filter(|&n| n <= MAX_PIXELS)
        .ok_or_else(|| bad("image too large"))?;

    let pixels = if binary {
        // exactly one whitespace byte separates maxval from the raster
        match cur.buf.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(bad("missing separator before raster")),
        }
        let raster = &bytes[cur.pos..];
        if raster.len() < n {
            return Err(bad(format!(
                "raster has {} bytes, expected {n}",
                raster.len()
            )));
        }
        if raster.len() > n {
            return Err(bad("trailing data after raster"));
        }
        raster.to_vec()
    } else {
        let mut px = Vec::with_capacity(n.min(bytes.len()));
        for _ in 0..n {
            let v = cur.number("pixel")?;
            if v > maxval {
                return Err(bad("pixel exceeds maxval"));
            }
            px.push(v as u8);
        }
        cur.skip_separators();
        if cur.pos != bytes.len() {
            return Err(bad("trailing data after raster"));
        }
        px
    };
    if binary && pixels.iter().any(|&p| usize::from(p) > maxval) {
        return Err(bad("pixel exceeds maxval"));
    }

    Ok(PgmImage {
        width,
        height,
        maxval: maxval as u16,
        pixels,
    })
}
