//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::compress::{
    decode_datagram, encode_data, encode_interest, encode_interest_uncompressed, CidTable, DataNameSource, Decoded,
    Encoded, HopId,
};
use crate::frame::{fragment, FragHeader, LINK_MTU};
use crate::ndn::{Name, Packet};
use crate::ratio::{load_corpus, parse_corpus, ratio_report, Elision, PassSummary, BUNDLED_CORPUS};
use crate::scenario::{
    default_cid_table, size_report, MessageSizes, NameScheme, RELIABILITY_REQUEST_INTERVAL_US, REQUEST_INTERVAL_US,
};
use crate::sim::{run_handshakes, InterfererParams, RunResult, SimConfig, StackMode, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "icnlowpan",
    version,
    about = "NDN over IEEE 802.15.4: compression, framing, simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uncompressed vs compressed sizes of the request/response pair.
    Sizes {
        /// `short`, `long` or a name URI.
        #[arg(long, default_value = "long")]
        name: NameScheme,
        /// CID table file; the built-in table when omitted.
        #[arg(long)]
        cid_config: Option<PathBuf>,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Name compression ratios over a corpus of URI paths.
    Ratio {
        /// One URI per line; the bundled corpus when omitted.
        corpus: Option<PathBuf>,
        /// Elide CID table prefixes instead of the first component.
        #[arg(long)]
        cid_config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// NDN TLV hex in, LoWPAN datagram hex out.
    Compress {
        /// Hex string; read from stdin when omitted.
        hex: Option<String>,
        #[arg(long)]
        cid_config: Option<PathBuf>,
        /// Attach this HopID (Interest) or elide the name with it (Data).
        #[arg(long)]
        hop_id: Option<u8>,
        /// Data only: components covered by the pending Interest name.
        /// Defaults to the whole name.
        #[arg(long, requires = "hop_id")]
        elide: Option<usize>,
        /// Use the uncompressed dispatch.
        #[arg(long)]
        uncompressed: bool,
    },
    /// LoWPAN datagram hex in, NDN TLV hex out.
    Decompress {
        hex: Option<String>,
        #[arg(long)]
        cid_config: Option<PathBuf>,
        /// Pending Interest name that completes a Data name sent with a HopID.
        #[arg(long)]
        prefix: Option<Name>,
    },
    /// Splits a datagram into link fragments.
    Frag {
        /// Datagram hex; read from stdin when omitted and `--size` is absent.
        hex: Option<String>,
        /// Use a synthetic datagram of this many bytes instead.
        #[arg(long, conflicts_with = "hex")]
        size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        tag: u16,
        #[arg(long, default_value_t = LINK_MTU)]
        mtu: usize,
    },
    /// Runs request/response handshakes over a line of nodes.
    Simulate {
        #[arg(long, default_value = "long")]
        name: NameScheme,
        #[arg(long)]
        cid_config: Option<PathBuf>,
        /// Forwarders between consumer and producer.
        #[arg(long, default_value_t = 1)]
        hops: usize,
        #[arg(long, default_value_t = 100)]
        requests: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Per-frame loss probability outside interferer collisions.
        #[arg(long, default_value_t = 0.0)]
        loss: f64,
        /// Enable the bursty cross-traffic interferer.
        #[arg(long)]
        interferer: bool,
        /// Request interval in ms; 300 with the interferer, else 500.
        #[arg(long)]
        interval_ms: Option<u64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Icnlowpan)]
        mode: ModeArg,
        /// Run plain NDN and ICNLoWPAN on the same seed and report deltas.
        #[arg(long)]
        compare: bool,
        /// Metrics file (JSON lines); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    PlainNdn,
    Icnlowpan,
}

impl From<ModeArg> for StackMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PlainNdn => StackMode::PlainNdn,
            ModeArg::Icnlowpan => StackMode::Icnlowpan,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input supplied by the user; exit status 2.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn load_table(path: &Option<PathBuf>) -> Result<CidTable, CliError> {
    match path {
        Some(p) => CidTable::load(p).map_err(runtime),
        None => Ok(default_cid_table()),
    }
}

fn read_hex(arg: Option<String>) -> Result<Vec<u8>, CliError> {
    let text = match arg {
        Some(h) => h,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    hex::decode(&cleaned).map_err(|e| CliError::Usage(format!("malformed hex: {e}")))
}

fn percent(x: f64) -> String {
    format!("{:.1}%", 100.0 * x)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Sizes { name, cid_config, json } => cmd_sizes(&name, &cid_config, json, out),
        Command::Ratio {
            corpus,
            cid_config,
            json,
        } => cmd_ratio(&corpus, &cid_config, json, out),
        Command::Compress {
            hex,
            cid_config,
            hop_id,
            elide,
            uncompressed,
        } => cmd_compress(
            read_hex(hex)?,
            &load_table(&cid_config)?,
            hop_id,
            elide,
            uncompressed,
            out,
        ),
        Command::Decompress {
            hex,
            cid_config,
            prefix,
        } => cmd_decompress(&read_hex(hex)?, &load_table(&cid_config)?, prefix.as_ref(), out),
        Command::Frag { hex, size, tag, mtu } => {
            let datagram = match size {
                Some(n) => (0..n).map(|i| i as u8).collect(),
                None => read_hex(hex)?,
            };
            cmd_frag(&datagram, tag, mtu, out)
        }
        Command::Simulate {
            name,
            cid_config,
            hops,
            requests,
            seed,
            loss,
            interferer,
            interval_ms,
            mode,
            compare,
            out: out_path,
        } => {
            if !(0.0..=1.0).contains(&loss) {
                return Err(CliError::Usage(format!("--loss {loss} is not a probability")));
            }
            let default_interval = if interferer {
                RELIABILITY_REQUEST_INTERVAL_US
            } else {
                REQUEST_INTERVAL_US
            };
            let config = SimConfig {
                hops,
                requests,
                scheme: name,
                mode: mode.into(),
                seed,
                base_loss: loss,
                interferer: interferer.then(InterfererParams::default),
                request_interval_us: interval_ms.map_or(default_interval, |ms| ms * 1000),
                cid_table: load_table(&cid_config)?,
                ..SimConfig::default()
            };
            cmd_simulate(&config, compare, out_path.as_ref(), out)
        }
    }
}

fn cmd_sizes(
    scheme: &NameScheme,
    cid_config: &Option<PathBuf>,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let table = load_table(cid_config)?;
    let name = scheme.sample_name();
    let report = size_report(&name, &table).map_err(runtime)?;
    if json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(runtime)?;
        writeln!(out)?;
        return Ok(());
    }
    writeln!(
        out,
        "# name {name} ({} components), {} CID entries",
        name.component_count(),
        table.len()
    )?;
    writeln!(
        out,
        "{:<9} {:>6} {:>6} {:>9} {:>8} {:>12} {:>13}",
        "message", "NDN", "body", "dispatch", "total", "body saving", "frame saving"
    )?;
    let row = |label: &str, m: &MessageSizes| {
        format!(
            "{:<9} {:>6} {:>6} {:>9} {:>8} {:>12} {:>13}",
            label,
            m.uncompressed,
            m.compressed_body,
            m.dispatch,
            m.compressed_total(),
            percent(m.body_saving),
            percent(m.frame_saving)
        )
    };
    writeln!(out, "{}", row("Interest", &report.interest))?;
    writeln!(out, "{}", row("Data", &report.data))?;
    writeln!(
        out,
        "CoAP request (literature value): {} bytes",
        report.coap_request_literature
    )?;
    Ok(())
}

fn cmd_ratio(
    corpus: &Option<PathBuf>,
    cid_config: &Option<PathBuf>,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let names = match corpus {
        Some(p) => load_corpus(p),
        None => parse_corpus(BUNDLED_CORPUS),
    }
    .map_err(runtime)?;
    let table;
    let elision = match cid_config {
        Some(p) => {
            table = CidTable::load(p).map_err(runtime)?;
            Elision::Table(&table)
        }
        None => Elision::Authority,
    };
    let report = ratio_report(&names, elision).map_err(runtime)?;
    if json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(runtime)?;
        writeln!(out)?;
        return Ok(());
    }
    let source = corpus
        .as_ref()
        .map_or("bundled corpus".into(), |p| p.display().to_string());
    let elided = cid_config.as_ref().map_or("first component".into(), |p| {
        format!("CID prefixes from {}", p.display())
    });
    writeln!(out, "# {source}: {} names, eliding {elided}", report.names)?;
    writeln!(
        out,
        "# {} names fell back to the uncompressed name encoding",
        report.fallback
    )?;
    let mut pass = |label: &str, s: &PassSummary| -> io::Result<()> {
        writeln!(out, "{label}: mean {} median {}", percent(s.mean), percent(s.median))?;
        for (i, count) in s.histogram.iter().enumerate() {
            writeln!(out, "  {:>3}-{:<3}% {count}", i * 10, (i + 1) * 10)?;
        }
        Ok(())
    };
    pass("prefix elision only", &report.prefix_only)?;
    pass("prefix elision + stateless", &report.combined)?;
    Ok(())
}

fn describe(encoded: &Encoded) -> String {
    format!(
        "path={} body={} dispatch={} fallback={}",
        encoded.path,
        encoded.body_len(),
        encoded.chain.encoded_len(),
        encoded.name_fallback
    )
}

fn cmd_compress(
    tlv: Vec<u8>,
    table: &CidTable,
    hop_id: Option<u8>,
    elide: Option<usize>,
    uncompressed: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let packet = Packet::decode(&tlv).map_err(|e| CliError::Usage(format!("input is not an NDN packet: {e}")))?;
    let hop_id = match hop_id {
        Some(h) => Some(HopId::new(h).ok_or_else(|| CliError::Usage("HopID 0 is reserved".into()))?),
        None => None,
    };
    let encoded = match (&packet, uncompressed) {
        (Packet::Interest(i), true) => encode_interest_uncompressed(i),
        (Packet::Data(d), true) => crate::compress::encode_data_uncompressed(d),
        (Packet::Interest(i), false) => encode_interest(i, table, hop_id),
        (Packet::Data(d), false) => {
            let source = match hop_id {
                Some(hop_id) => {
                    let n = elide.unwrap_or(d.name.component_count());
                    if n > d.name.component_count() {
                        return Err(CliError::Usage(format!("--elide {n} exceeds the name length")));
                    }
                    DataNameSource::EnRoute {
                        hop_id,
                        interest_components: n,
                    }
                }
                None => DataNameSource::Table,
            };
            encode_data(d, table, source)
        }
    }
    .map_err(runtime)?;
    writeln!(out, "{}", hex::encode(&encoded.datagram))?;
    writeln!(out, "# {}", describe(&encoded))?;
    Ok(())
}

fn cmd_decompress(
    datagram: &[u8],
    table: &CidTable,
    prefix: Option<&Name>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (packet, meta) = match decode_datagram(datagram, table).map_err(runtime)? {
        Decoded::Interest { interest, hop_id, path } => {
            let hid = hop_id.map_or("none".into(), |h| h.to_string());
            (Packet::Interest(interest), format!("path={path} hop_id={hid}"))
        }
        Decoded::Data { data, path } => (Packet::Data(data), format!("path={path}")),
        Decoded::DataByHopId { data, hop_id } => {
            let Some(prefix) = prefix else {
                return Err(CliError::Usage(format!(
                    "Data carries HopID {hop_id} and only the name suffix {}; pass --prefix",
                    data.name
                )));
            };
            let data = crate::compress::restore_data_name(data, prefix);
            (Packet::Data(data), format!("path=en-route hop_id={hop_id}"))
        }
    };
    writeln!(out, "{}", hex::encode(packet.encode()))?;
    writeln!(out, "# {meta} name={}", packet.name())?;
    Ok(())
}

fn cmd_frag(datagram: &[u8], tag: u16, mtu: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let frames = fragment(datagram, mtu, tag).map_err(runtime)?;
    writeln!(
        out,
        "# {} bytes, tag {tag}, mtu {mtu}: {} frame(s)",
        datagram.len(),
        frames.len()
    )?;
    for f in &frames {
        let info = match FragHeader::split(f).map_err(runtime)?.0 {
            Some(h) => format!("offset={} size={}", h.byte_offset(), h.datagram_size),
            None => "unfragmented".into(),
        };
        writeln!(out, "{} # {} bytes {info}", hex::encode(f), f.len())?;
    }
    Ok(())
}

fn run_sim(config: &SimConfig) -> Result<RunResult, CliError> {
    run_handshakes(config).map_err(|e| match e {
        crate::sim::Error::Config(m) => CliError::Usage(m),
        other => runtime(other),
    })
}

fn cmd_simulate(
    config: &SimConfig,
    compare: bool,
    out_path: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let runs = if compare {
        vec![
            run_sim(&SimConfig {
                mode: StackMode::PlainNdn,
                ..config.clone()
            })?,
            run_sim(&SimConfig {
                mode: StackMode::Icnlowpan,
                ..config.clone()
            })?,
        ]
    } else {
        vec![run_sim(config)?]
    };

    match out_path {
        Some(p) => {
            let mut file = BufWriter::new(File::create(p)?);
            for r in &runs {
                r.write_jsonl(&mut file).map_err(runtime)?;
            }
            file.flush()?;
        }
        None => {
            for r in &runs {
                r.write_jsonl(&mut *out).map_err(runtime)?;
            }
        }
    }

    if let [plain, icnl] = runs.as_slice() {
        // keep stdout parseable when it carries the metrics
        let mut stderr = io::stderr();
        let summary: &mut dyn Write = if out_path.is_some() { out } else { &mut stderr };
        write_compare(plain, icnl, summary)?;
    }
    Ok(())
}

fn write_compare(plain: &RunResult, icnl: &RunResult, out: &mut dyn Write) -> io::Result<()> {
    let c = &plain.config;
    writeln!(
        out,
        "# compare: scheme={} hops={} requests={} seed={} loss={} interferer={} interval_ms={}",
        c.scheme,
        c.hops,
        c.requests,
        c.seed,
        c.base_loss,
        c.interferer.is_some(),
        c.request_interval_us / 1000
    )?;
    let per_request = |bytes: u64| bytes as f64 / c.requests.max(1) as f64;
    for (a, b) in plain.metrics.iter().zip(&icnl.metrics) {
        let (x, y) = (per_request(a.bytes_tx), per_request(b.bytes_tx));
        let delta = if x > 0.0 { (y - x) / x } else { 0.0 };
        writeln!(
            out,
            "{:<9} node {:>2}: bytes/req {:>7.1} -> {:>7.1} ({:+.1}%)  prr {} -> {}",
            a.role.to_string(),
            a.node,
            x,
            y,
            100.0 * delta,
            percent(a.prr),
            percent(b.prr)
        )?;
    }
    writeln!(
        out,
        "satisfied requests: {} -> {}",
        percent(plain.satisfaction()),
        percent(icnl.satisfaction())
    )
}

/// Parses `std::env::args`, runs the command and maps errors to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("icnlowpan").chain(args.iter().copied()))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let mut buf = Vec::new();
        run(cli, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn compress_decompress_round_trip() {
        let interest = crate::scenario::harness_interest(NameScheme::Long.name_for(4), 4);
        let tlv = hex::encode(interest.encode());
        let out = run_args(&["compress", &tlv, "--hop-id", "7"]).unwrap();
        let datagram = out.lines().next().unwrap();
        assert!(out.contains("path=en-route"));
        let back = run_args(&["decompress", datagram]).unwrap();
        assert_eq!(back.lines().next().unwrap(), tlv);
    }

    #[test]
    fn malformed_hex_is_usage_error() {
        let err = run_args(&["compress", "zz"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert_eq!(run_args(&["frobnicate"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn sizes_echo_config() {
        let out = run_args(&["sizes", "--name", "short"]).unwrap();
        assert!(out.starts_with("# name /org/example/temp/1"));
        assert!(out.contains("literature value"));
    }

    #[test]
    fn frag_reports_offsets() {
        let out = run_args(&["frag", "--size", "300", "--tag", "5"]).unwrap();
        assert_eq!(out.lines().count(), 5);
        assert!(out.contains("offset=288"));
    }
}
