//! Reading raw timestamped link records and turning them into a canonical
//! arrival stream.
//!
//! A raw record is one line `<time> <src> <dst>`. Node identifiers are opaque
//! tokens (IP addresses, URLs, peer ids) and are renumbered densely in order of
//! first appearance. Only the first discovery of a link is kept, and a loop
//! `(v, v)` only discovers `v`.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use crate::error::{Error, Result};

/// One measurement record as read from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEvent {
    pub time: u64,
    pub src: String,
    pub dst: String,
}

impl RawEvent {
    pub fn new(time: u64, src: impl Into<String>, dst: impl Into<String>) -> Self {
        Self { time, src: src.into(), dst: dst.into() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Lines are `<src> <dst>` and line order is arrival order; the timestamp
    /// is a running counter starting at 0.
    pub no_time: bool,
}

/// Streaming iterator over the records of a line-oriented source.
pub struct EventReader<R> {
    reader: R,
    options: ParseOptions,
    line_no: u64,
    last_time: Option<u64>,
    counter: u64,
    buf: String,
}

impl<R: BufRead> EventReader<R> {
    pub fn new(reader: R, options: ParseOptions) -> Self {
        Self { reader, options, line_no: 0, last_time: None, counter: 0, buf: String::new() }
    }

    fn parse_line(&mut self) -> Result<Option<RawEvent>> {
        let line = self.buf.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(None);
        }
        let malformed = |reason: &str| Error::Malformed { line: self.line_no, reason: reason.to_string() };
        let mut fields = line.split_whitespace();
        let time = if self.options.no_time {
            let t = self.counter;
            self.counter += 1;
            t
        } else {
            let field = fields.next().ok_or_else(|| malformed("missing time"))?;
            field.parse::<u64>().map_err(|_| malformed(&format!("invalid timestamp {field:?}")))?
        };
        let src = fields.next().ok_or_else(|| malformed("missing source node"))?;
        let dst = fields.next().ok_or_else(|| malformed("missing destination node"))?;
        if fields.next().is_some() {
            return Err(malformed("trailing fields"));
        }
        if let Some(last) = self.last_time {
            if time < last {
                return Err(Error::DecreasingTime { line: self.line_no });
            }
        }
        self.last_time = Some(time);
        Ok(Some(RawEvent::new(time, src, dst)))
    }
}

impl<R: BufRead> Iterator for EventReader<R> {
    type Item = Result<RawEvent>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line_no += 1;
            match self.parse_line() {
                Ok(Some(event)) => return Some(Ok(event)),
                Ok(None) => continue,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Parses every record of `reader` in file order.
pub fn parse_event_stream<R: BufRead>(reader: R, options: ParseOptions) -> Result<Vec<RawEvent>> {
    EventReader::new(reader, options).collect()
}

/// Opens a text input, transparently decompressing files ending in `.gz`.
pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    let file = File::open(path)?;
    let gz = path.extension().is_some_and(|ext| ext == "gz");
    Ok(if gz {
        Box::new(BufReader::with_capacity(1 << 16, MultiGzDecoder::new(file)))
    } else {
        Box::new(BufReader::with_capacity(1 << 16, file))
    })
}

/// A normalized link discovery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinkArrival {
    pub u: u32,
    pub v: u32,
    pub time: u64,
}

/// Canonical arrival stream: distinct non-loop links in discovery order over
/// dense node indices.
///
/// `node_count_prefix[i]` is the number of distinct nodes known once link `i`
/// has been consumed. Nodes discovered only through loops are credited to the
/// preceding link (or to the first link when they come before any link), so
/// the prefix always ends at `final_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrivalStream {
    events: Vec<LinkArrival>,
    node_count_prefix: Vec<u32>,
    final_n: u64,
}

impl ArrivalStream {
    pub fn events(&self) -> &[LinkArrival] {
        &self.events
    }

    pub fn node_count_prefix(&self) -> &[u32] {
        &self.node_count_prefix
    }

    pub fn final_n(&self) -> u64 {
        self.final_n
    }

    pub fn final_m(&self) -> u64 {
        self.events.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Number of distinct nodes discovered once `position` events are consumed.
    pub fn nodes_at(&self, position: usize) -> u64 {
        match position {
            0 => 0,
            p => u64::from(self.node_count_prefix[p - 1]),
        }
    }

    /// Advances from `cursor` (a count of consumed events) to the first
    /// position at which at least `target_n` nodes are known. The event that
    /// discovers the `target_n`-th node is included, so the actual node count
    /// may overshoot by one.
    pub fn replay_to(&self, cursor: usize, target_n: u64) -> Result<usize> {
        if target_n > self.final_n {
            return Err(Error::TargetBeyondStream { target: target_n, final_n: self.final_n });
        }
        if target_n == 0 || (cursor > 0 && self.nodes_at(cursor) >= target_n) {
            return Ok(cursor);
        }
        let rest = &self.node_count_prefix[cursor..];
        let skipped = rest.partition_point(|&count| u64::from(count) < target_n);
        // target_n <= final_n guarantees a hit when the stream is non-empty.
        Ok((cursor + skipped + 1).min(self.events.len()))
    }

    /// Renders the stream back into raw records using node indices as tokens,
    /// re-emitting loop-only nodes as loops so that `normalize` reproduces it.
    pub fn to_raw_events(&self) -> Vec<RawEvent> {
        let mut out = Vec::with_capacity(self.events.len());
        let mut next: u32 = 0;
        for (link, &known) in self.events.iter().zip(&self.node_count_prefix) {
            // endpoints are interned src first; any skipped index before one
            // of them belongs to a node that was discovered by a loop
            let mut loops = Vec::new();
            for x in [link.u, link.v] {
                if x >= next {
                    loops.extend(next..x);
                    next = x + 1;
                }
            }
            for lone in loops {
                out.push(RawEvent::new(link.time, lone.to_string(), lone.to_string()));
            }
            out.push(RawEvent::new(link.time, link.u.to_string(), link.v.to_string()));
            for lone in next..known {
                out.push(RawEvent::new(link.time, lone.to_string(), lone.to_string()));
            }
            next = next.max(known);
        }
        out
    }
}

/// Incremental normalizer; feed records in time order and call `finish`.
#[derive(Debug, Default)]
pub struct Normalizer {
    ids: HashMap<String, u32>,
    seen: HashSet<u64>,
    events: Vec<LinkArrival>,
    node_count_prefix: Vec<u32>,
}

impl Normalizer {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, token: &str) -> u32 {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = u32::try_from(self.ids.len()).expect("more than 2^32 nodes");
        self.ids.insert(token.to_owned(), id);
        id
    }

    pub fn push(&mut self, event: &RawEvent) {
        self.push_tokens(event.time, &event.src, &event.dst);
    }

    pub fn push_tokens(&mut self, time: u64, src: &str, dst: &str) {
        let u = self.intern(src);
        let v = self.intern(dst);
        let known = self.ids.len() as u32;
        if u == v {
            if let Some(last) = self.node_count_prefix.last_mut() {
                *last = known;
            }
            return;
        }
        if self.seen.insert(pair_key(u, v)) {
            self.events.push(LinkArrival { u, v, time });
            self.node_count_prefix.push(known);
        }
    }

    /// Number of distinct nodes seen so far.
    pub fn node_count(&self) -> u64 {
        self.ids.len() as u64
    }

    pub fn finish(self) -> ArrivalStream {
        let final_n = self.ids.len() as u64;
        ArrivalStream { events: self.events, node_count_prefix: self.node_count_prefix, final_n }
    }
}

fn pair_key(u: u32, v: u32) -> u64 {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    (u64::from(lo) << 32) | u64::from(hi)
}

pub fn normalize<'a, I>(events: I) -> ArrivalStream
where
    I: IntoIterator<Item = &'a RawEvent>,
{
    let mut normalizer = Normalizer::new();
    for event in events {
        normalizer.push(event);
    }
    normalizer.finish()
}

/// Parses and normalizes in a single streaming pass.
pub fn read_stream<R: BufRead>(reader: R, options: ParseOptions) -> Result<ArrivalStream> {
    let mut normalizer = Normalizer::new();
    for event in EventReader::new(reader, options) {
        normalizer.push(&event?);
    }
    Ok(normalizer.finish())
}

const CACHE_MAGIC: &[u8; 8] = b"NETEVOS\0";
const CACHE_VERSION: u32 = 1;

/// Writes the binary sidecar: magic, version, `final_n`, `final_m`, then per
/// link `u: u32, v: u32, time: u64, nodes_after: u32`, all little-endian.
pub fn write_cache<W: Write>(stream: &ArrivalStream, writer: W) -> Result<()> {
    let mut w = io::BufWriter::new(writer);
    w.write_all(CACHE_MAGIC)?;
    w.write_all(&CACHE_VERSION.to_le_bytes())?;
    w.write_all(&stream.final_n.to_le_bytes())?;
    w.write_all(&stream.final_m().to_le_bytes())?;
    for (link, &known) in stream.events.iter().zip(&stream.node_count_prefix) {
        w.write_all(&link.u.to_le_bytes())?;
        w.write_all(&link.v.to_le_bytes())?;
        w.write_all(&link.time.to_le_bytes())?;
        w.write_all(&known.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_cache<R: Read>(reader: R) -> Result<ArrivalStream> {
    let mut r = BufReader::new(reader);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != CACHE_MAGIC {
        return Err(Error::BadCache("bad magic".into()));
    }
    let version = read_u32(&mut r)?;
    if version != CACHE_VERSION {
        return Err(Error::BadCache(format!("unsupported version {version}")));
    }
    let final_n = read_u64(&mut r)?;
    let final_m = read_u64(&mut r)?;
    let len = usize::try_from(final_m).map_err(|_| Error::BadCache("too many links".into()))?;
    let mut events = Vec::with_capacity(len);
    let mut node_count_prefix = Vec::with_capacity(len);
    let mut last = 0u32;
    for _ in 0..len {
        let u = read_u32(&mut r)?;
        let v = read_u32(&mut r)?;
        let time = read_u64(&mut r)?;
        let known = read_u32(&mut r)?;
        if u == v || u64::from(u.max(v)) >= u64::from(known) || known < last {
            return Err(Error::BadCache("inconsistent link record".into()));
        }
        last = known;
        events.push(LinkArrival { u, v, time });
        node_count_prefix.push(known);
    }
    if u64::from(last) != final_n && len > 0 {
        return Err(Error::BadCache("node count does not match header".into()));
    }
    Ok(ArrivalStream { events, node_count_prefix, final_n })
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

/// Loads a stream from a cache sidecar or from a (possibly gzipped) text file.
pub fn load_stream(path: &Path, options: ParseOptions) -> Result<ArrivalStream> {
    let mut probe = [0u8; 8];
    let is_cache = {
        let mut f = File::open(path)?;
        f.read(&mut probe)? == 8 && &probe == CACHE_MAGIC
    };
    if is_cache {
        read_cache(File::open(path)?)
    } else {
        read_stream(open_input(path)?, options)
    }
}

/// Target node counts at which statistics are evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointSchedule {
    pub sizes: Vec<u64>,
    pub nominal_count: u64,
}

/// Distinct values of `round(i * final_n / nominal_count)` for
/// `i = 1..=nominal_count`, rounding halves up and dropping zeros.
pub fn checkpoint_sizes(final_n: u64, nominal_count: u64) -> CheckpointSchedule {
    let mut sizes: Vec<u64> = Vec::with_capacity(nominal_count as usize);
    let (n, k) = (u128::from(final_n), u128::from(nominal_count.max(1)));
    for i in 1..=k {
        let size = ((2 * i * n + k) / (2 * k)) as u64;
        if size > 0 && sizes.last() != Some(&size) {
            sizes.push(size);
        }
    }
    CheckpointSchedule { sizes, nominal_count }
}
