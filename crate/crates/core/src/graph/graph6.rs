//! graph6 encoding (header-free records), following the nauty format notes:
//! N(n) then the upper triangle x(0,1) x(0,2) x(1,2) x(0,3) ... packed six
//! bits per byte, each byte offset by 63, last byte zero-padded.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let err = |offset: usize, msg: &str| Error::Parse { offset, msg: msg.to_string() };
    let sixbits = |i: usize| -> Result<u8> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
            Some(_) => Err(err(i, "byte outside the graph6 range 63..=126")),
            None => Err(err(i, "record ends early")),
        }
    };

    let first = sixbits(0)?;
    let (n, mut pos) = if first < 63 {
        (first as usize, 1)
    } else if bytes.get(1) == Some(&126) {
        return Err(err(1, "8-byte order field exceeds the 64-vertex limit"));
    } else {
        let n = (sixbits(1)? as usize) << 12 | (sixbits(2)? as usize) << 6 | sixbits(3)? as usize;
        if n <= 62 {
            return Err(err(1, "non-minimal order field"));
        }
        (n, 4)
    };
    if n > MAX_ORDER {
        return Err(Error::OversizeGraph(n));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != pos + nbytes {
        let at = bytes.len().min(pos + nbytes);
        return Err(err(at, &format!("expected {} body bytes, found {}", nbytes, bytes.len() - pos)));
    }

    let mut g = Graph::new(n);
    let mut k = 0;
    let mut cur = 0u8;
    'outer: for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                cur = sixbits(pos)?;
                pos += 1;
            }
            if cur >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            if k == nbits {
                break 'outer;
            }
        }
    }
    if k % 6 != 0 && cur & ((1u8 << (6 - k % 6)) - 1) != 0 {
        return Err(err(pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}
