//! Text and image formats: cluster-trace CSV, run configs, graph spec strings and
//! binary PGM heat maps.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::cluster::ClusterTrace;
use crate::error::{Error, Result};
use crate::experiments::VERSION;
use crate::graph::{make_barbell_tree, make_grid, make_path, make_regular_tree, make_star, make_torus, Graph};
use crate::labeling::Labeling;
use crate::mcmc::McmcConfig;

pub const TRACE_HEADER: &str = "k,vertex,boundary_size,connected";
const TRUNCATED_MARKER: &str = "# truncated";

/// Header line, then `k,vertex,boundary_size,connected` per step. A truncated
/// trace ends with the line `# truncated`.
pub fn trace_to_csv(trace: &ClusterTrace) -> String {
    let mut out = String::with_capacity(24 * (trace.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for k in 0..trace.len() {
        let _ = writeln!(
            out,
            "{k},{},{},{}",
            trace.addition_order[k], trace.boundary_size[k], trace.connected[k]
        );
    }
    if trace.truncated {
        out.push_str(TRUNCATED_MARKER);
        out.push('\n');
    }
    out
}

/// Leading `#` lines are skipped.
pub fn parse_trace_csv(text: &str) -> Result<ClusterTrace> {
    let perr = |m: String| Error::Parse(format!("trace csv: {m}"));
    let mut lines = text.lines().skip_while(|l| l.starts_with('#'));
    match lines.next() {
        Some(TRACE_HEADER) => {}
        other => return Err(perr(format!("expected header {TRACE_HEADER:?}, found {other:?}"))),
    }
    let mut trace = ClusterTrace::default();
    for line in lines {
        if line == TRUNCATED_MARKER {
            trace.truncated = true;
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        let [k, v, b, c] = cells[..] else {
            return Err(perr(format!("row {line:?}")));
        };
        let int = |s: &str| s.parse::<usize>().map_err(|e| perr(format!("{s:?}: {e}")));
        if int(k)? != trace.len() {
            return Err(perr(format!("row {line:?} out of sequence")));
        }
        trace.addition_order.push(int(v)?);
        trace.boundary_size.push(int(b)?);
        trace.connected.push(match c {
            "true" => true,
            "false" => false,
            _ => return Err(perr(format!("connected flag {c:?}"))),
        });
    }
    Ok(trace)
}

pub fn write_trace_csv(trace: &ClusterTrace, path: &Path) -> Result<()> {
    fs::write(path, trace_to_csv(trace)).map_err(|e| Error::io(path, e))
}

pub fn read_trace_csv(path: &Path) -> Result<ClusterTrace> {
    parse_trace_csv(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

/// Several labelings, separated by blank lines.
pub fn labelings_to_text(labelings: &[Labeling]) -> String {
    labelings.iter().map(Labeling::to_text).collect::<Vec<_>>().join("\n")
}

pub fn parse_labelings(text: &str) -> Result<Vec<Labeling>> {
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    body.split(|l| l.trim().is_empty())
        .filter(|block| !block.is_empty())
        .map(|block| Labeling::parse_text(&block.join("\n")))
        .collect()
}

/// Builds a graph from `path:N`, `star:N`, `grid:M,N`, `torus:D,SIDE`,
/// `regular:D,K`, `barbell:N,M` or `file:PATH` (edge-list format).
pub fn parse_graph_spec(spec: &str) -> Result<Graph> {
    let perr = |m: String| Error::Parse(format!("graph spec {spec:?}: {m}"));
    let (family, args) = spec.split_once(':').ok_or_else(|| perr("expected family:args".into()))?;
    if family == "file" {
        return Graph::read_edge_list(Path::new(args));
    }
    let nums = args
        .split(',')
        .map(|a| a.trim().parse::<usize>().map_err(|e| perr(format!("{a:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let want = |k: usize| -> Result<()> {
        if nums.len() == k {
            Ok(())
        } else {
            Err(perr(format!("{family} takes {k} argument(s)")))
        }
    };
    match family {
        "path" => want(1).and_then(|_| make_path(nums[0])),
        "star" => want(1).and_then(|_| make_star(nums[0])),
        "grid" => want(2).and_then(|_| make_grid(nums[0], nums[1])),
        "torus" => want(2).and_then(|_| make_torus(nums[0], nums[1])),
        "regular" => want(2).and_then(|_| make_regular_tree(nums[0], nums[1])),
        "barbell" => want(2).and_then(|_| make_barbell_tree(nums[0], nums[1])),
        _ => Err(perr(format!("unknown family {family:?}"))),
    }
}

/// Flat `key = value` description of a run. Keys are written in a fixed order so
/// identical configs serialize identically.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub command: String,
    pub graph_spec: Option<String>,
    pub sampler: Option<McmcConfig>,
    pub max_draws: Option<u64>,
    pub master_seed: Option<u64>,
    pub output: Option<String>,
    /// Remaining flags (method, k, format, ...).
    pub options: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn option(mut self, key: &str, value: impl ToString) -> Self {
        self.options.insert(key.into(), value.to_string());
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command = {}", self.command);
        if let Some(g) = &self.graph_spec {
            let _ = writeln!(out, "graph = {g}");
        }
        if let Some(s) = self.master_seed {
            let _ = writeln!(out, "seed = {s}");
        }
        if let Some(c) = &self.sampler {
            let _ = writeln!(out, "mcmc.steps = {}", c.steps);
            let _ = writeln!(out, "mcmc.burn_in = {}", c.burn_in);
            let _ = writeln!(out, "mcmc.thinning = {}", c.thinning);
            let _ = writeln!(out, "mcmc.proposal_mix = {}", c.proposal_mix);
        }
        if let Some(d) = self.max_draws {
            let _ = writeln!(out, "rejection.max_draws = {d}");
        }
        if let Some(o) = &self.output {
            let _ = writeln!(out, "output = {o}");
        }
        for (k, v) in &self.options {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let perr = |m: String| Error::Parse(format!("run config: {m}"));
        let mut cfg = RunConfig::default();
        let mut mcmc: BTreeMap<&str, &str> = BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (k, v) = line.split_once(" = ").ok_or_else(|| perr(format!("line {line:?}")))?;
            let int = |v: &str| v.parse::<u64>().map_err(|e| perr(format!("{k}: {e}")));
            match k {
                "command" => cfg.command = v.into(),
                "graph" => cfg.graph_spec = Some(v.into()),
                "seed" => cfg.master_seed = Some(int(v)?),
                "rejection.max_draws" => cfg.max_draws = Some(int(v)?),
                "output" => cfg.output = Some(v.into()),
                _ if k.starts_with("mcmc.") => {
                    mcmc.insert(k, v);
                }
                _ => {
                    cfg.options.insert(k.into(), v.into());
                }
            }
        }
        if !mcmc.is_empty() {
            let get = |k: &str| mcmc.get(k).copied().ok_or_else(|| perr(format!("missing {k}")));
            let int = |k: &str| get(k)?.parse::<u64>().map_err(|e| perr(format!("{k}: {e}")));
            let mix = get("mcmc.proposal_mix")?
                .parse::<f64>()
                .map_err(|e| perr(format!("mcmc.proposal_mix: {e}")))?;
            cfg.sampler = Some(McmcConfig::new(
                int("mcmc.steps")?,
                int("mcmc.burn_in")?,
                int("mcmc.thinning")?,
                mix,
            )?);
        }
        if cfg.command.is_empty() {
            return Err(perr("missing command".into()));
        }
        Ok(cfg)
    }

    /// The config as `#` comment lines headed by the version line.
    pub fn preamble(&self) -> String {
        let mut out = format!("# graph-peaks {VERSION}\n");
        for line in self.to_text().lines() {
            let _ = writeln!(out, "# {line}");
        }
        out
    }

    /// Reads the config back from the leading `#` lines of an output file.
    pub fn from_preamble(text: &str) -> Result<Self> {
        let body: Vec<&str> = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .skip(1)
            .map(|l| l.trim_start_matches('#').trim())
            .collect();
        Self::parse(&body.join("\n"))
    }
}

/// Pixel value `floor(255 (rank - 1) / (N - 1))`; 0 when `N = 1`.
pub fn heat(rank: usize, n: usize) -> u8 {
    if n <= 1 {
        0
    } else {
        (255 * (rank - 1) / (n - 1)) as u8
    }
}

fn lattice_dims(g: &Graph) -> Result<(usize, usize)> {
    match g.coords() {
        Some(c) if c.dim() == 2 => Ok((c.extents()[1], c.extents()[0])),
        _ => Err(Error::Precondition("heat maps need a 2D lattice graph".into())),
    }
}

/// Binary `P5` image with pixel `i` = vertex `i`, width the extent of the last
/// coordinate. `comments` become `#` header lines.
pub fn render_ranks_pgm(g: &Graph, ranks: &[usize], comments: &str) -> Result<Vec<u8>> {
    let (w, h) = lattice_dims(g)?;
    let n = g.n_vertices();
    if ranks.len() != n {
        return Err(Error::Precondition(format!("{} ranks for {n} vertices", ranks.len())));
    }
    let mut out = b"P5\n".to_vec();
    for line in comments.lines() {
        out.extend_from_slice(b"# ");
        out.extend_from_slice(line.trim_start_matches('#').trim().as_bytes());
        out.push(b'\n');
    }
    out.extend_from_slice(format!("{w} {h}\n255\n").as_bytes());
    out.extend(ranks.iter().map(|&r| heat(r, n)));
    Ok(out)
}

/// Heat map of a labeling: rank = label.
pub fn render_labeling_pgm(g: &Graph, labeling: &Labeling, comments: &str) -> Result<Vec<u8>> {
    labeling.check_for(g)?;
    render_ranks_pgm(g, labeling.labels(), comments)
}

/// Heat map of a growth trace: rank = 1-based attachment step. Vertices never
/// attached get rank `N`.
pub fn render_trace_pgm(g: &Graph, trace: &ClusterTrace, comments: &str) -> Result<Vec<u8>> {
    let n = g.n_vertices();
    let ranks: Vec<usize> = trace
        .ranks(n)
        .into_iter()
        .map(|r| r.map_or(n, |k| k + 1))
        .collect();
    render_ranks_pgm(g, &ranks, comments)
}

/// Decoded `P5` image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub maxval: usize,
    pub pixels: Vec<u8>,
}

/// Reader for binary PGM (8-bit), tolerant of header comments.
pub fn parse_pgm(bytes: &[u8]) -> Result<Pgm> {
    let perr = |m: &str| Error::Parse(format!("pgm: {m}"));
    let mut pos = 0;
    let mut token = || -> Result<String> {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(perr("truncated header"));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };
    if token()? != "P5" {
        return Err(perr("not a P5 file"));
    }
    let mut num = || -> Result<usize> { token()?.parse().map_err(|_| perr("bad header number")) };
    let (width, height, maxval) = (num()?, num()?, num()?);
    if maxval == 0 || maxval > 255 {
        return Err(perr("only 8-bit images are supported"));
    }
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    let pixels = bytes.get(pos..).ok_or_else(|| perr("missing raster"))?.to_vec();
    if pixels.len() != width * height {
        return Err(perr("raster size does not match the header"));
    }
    Ok(Pgm {
        width,
        height,
        maxval,
        pixels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_csv_round_trip() {
        let empty = ClusterTrace::default();
        assert_eq!(trace_to_csv(&empty), format!("{TRACE_HEADER}\n"));
        let t = ClusterTrace {
            addition_order: vec![3, 1, 2],
            boundary_size: vec![4, 5, 6],
            connected: vec![true, false, true],
            truncated: true,
        };
        let text = trace_to_csv(&t);
        assert_eq!(text.lines().count(), 5);
        assert_eq!(parse_trace_csv(&text).unwrap(), t);
        assert!(parse_trace_csv("k,v\n").is_err());
    }

    #[test]
    fn graph_specs() {
        assert_eq!(parse_graph_spec("path:4").unwrap().n_vertices(), 4);
        assert_eq!(parse_graph_spec("grid:3,5").unwrap().n_vertices(), 15);
        assert_eq!(parse_graph_spec("torus:2,30").unwrap().n_vertices(), 900);
        assert_eq!(parse_graph_spec("regular:3,2").unwrap().n_vertices(), 17);
        assert_eq!(parse_graph_spec("barbell:2,5").unwrap().n_vertices(), 9);
        assert_eq!(parse_graph_spec("star:6").unwrap().n_vertices(), 6);
        assert!(parse_graph_spec("grid:3").is_err());
        assert!(parse_graph_spec("cube:3").is_err());
        assert!(parse_graph_spec("path").is_err());
    }

    #[test]
    fn run_config_round_trip() {
        let mut c = RunConfig::new("sample").option("method", "mcmc").option("k", 2);
        c.graph_spec = Some("path:5".into());
        c.master_seed = Some(17);
        c.sampler = Some(McmcConfig::new(1000, 10, 5, 0.8).unwrap());
        c.max_draws = Some(99);
        c.output = Some("out.txt".into());
        assert_eq!(RunConfig::parse(&c.to_text()).unwrap(), c);
        let body = format!("{}rest\n", c.preamble());
        assert_eq!(RunConfig::from_preamble(&body).unwrap(), c);
    }

    #[test]
    fn pgm_pixels() {
        let g = make_grid(1, 1).unwrap();
        let one = render_labeling_pgm(&g, &Labeling::identity(1), "").unwrap();
        assert_eq!(parse_pgm(&one).unwrap().pixels, vec![0]);
        let g = make_grid(2, 3).unwrap();
        let l = Labeling::from_labels(vec![6, 1, 2, 3, 4, 5]).unwrap();
        let bytes = render_labeling_pgm(&g, &l, "a\nb").unwrap();
        let p = parse_pgm(&bytes).unwrap();
        assert_eq!((p.width, p.height, p.maxval), (2, 3, 255));
        assert_eq!(p.pixels, vec![255, 0, 51, 102, 153, 204]);
        assert!(render_labeling_pgm(&make_path(4).unwrap(), &Labeling::identity(4), "").is_err());
        let t = make_torus(3, 3).unwrap();
        assert!(render_labeling_pgm(&t, &Labeling::identity(27), "").is_err());
    }

    #[test]
    fn labeling_blocks() {
        let ls = vec![Labeling::identity(3), Labeling::from_labels(vec![3, 1, 2]).unwrap()];
        assert_eq!(parse_labelings(&labelings_to_text(&ls)).unwrap(), ls);
    }
}
