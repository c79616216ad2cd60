//! Shared plumbing: config loading, point/sample IO, atomic output, digests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use avckit::error::Error;
use avckit::geometry::{NeighborhoodRelation, NormP};
use avckit::hypotheses::{parse_hypothesis, HypothesisDoc, Label};
use avckit::risk::LabeledSample;
use avckit::scalar::{format_f64, parse_f64};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub type Result<T> = std::result::Result<T, Error>;

/// Load and parse an optional TOML config file into a per-command struct.
pub fn load_config<T: Default + serde::de::DeserializeOwned>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            toml::from_str(&text).map_err(|e| {
                Error::invalid(format!("config {}: {e}", p.display()))
            })
        }
    }
}

/// Canonical digest of a resolved config: TOML-serialize (field order is the
/// struct order, stable) and SHA-256 the bytes.
pub fn config_digest<T: Serialize>(resolved: &T) -> String {
    let text = toml::to_string(resolved).expect("resolved config serializes");
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let full = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for b in full {
        let _ = write!(hex, "{b:02x}");
    }
    hex
}

pub fn parse_ball(p: &Option<String>, epsilon: Option<f64>) -> Result<NeighborhoodRelation<f64>> {
    let p: NormP = p.as_deref().unwrap_or("inf").parse()?;
    NeighborhoodRelation::ball(p, epsilon.unwrap_or(0.0))
}

pub fn read_hypothesis(path: &Path) -> Result<HypothesisDoc> {
    let text = std::fs::read_to_string(path)?;
    parse_hypothesis(&text).map_err(|e| annotate(e, path))
}

fn annotate(e: Error, path: &Path) -> Error {
    match e {
        Error::InvalidInput(m) => Error::invalid(format!("{}: {m}", path.display())),
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

/// Point rows plus the label column when the file carries one.
pub type ParsedPoints = (Vec<Vec<f64>>, Option<Vec<Label>>);

/// Points from a CSV file: either the labeled-sample format or a bare
/// variant with only coordinate columns. Labels, when present, come along.
pub fn read_points(path: &Path) -> Result<ParsedPoints> {
    let text = std::fs::read_to_string(path)?;
    let header = text.lines().next().unwrap_or("");
    let labeled = header.split(',').next_back() == Some("label");
    if labeled {
        let sample = LabeledSample::from_csv(&text).map_err(|e| annotate(e, path))?;
        let labels = sample.labels().to_vec();
        return Ok((sample.points().to_vec(), Some(labels)));
    }
    parse_bare_points(&text)
        .map(|pts| (pts, None))
        .map_err(|e| annotate(e, path))
}

fn parse_bare_points(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(Error::parse(1, "empty points file"));
    };
    let cols: Vec<&str> = header.split(',').collect();
    let dim = cols.len();
    for (i, c) in cols.iter().enumerate() {
        if *c != format!("x{i}") {
            return Err(Error::parse(
                1,
                format!("expected header column x{i}, got {c:?}"),
            ));
        }
    }
    let mut points = Vec::new();
    for (lineno, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != dim {
            return Err(Error::parse(
                lineno + 1,
                format!("expected {dim} fields, got {}", fields.len()),
            ));
        }
        let coords: Result<Vec<f64>> = fields
            .iter()
            .map(|f| {
                parse_f64(f).map_err(|e| Error::parse(lineno + 1, e.to_string()))
            })
            .collect();
        points.push(coords?);
    }
    Ok(points)
}

/// Comma-separated reals.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|f| parse_f64(f.trim()))
        .collect::<Result<Vec<f64>>>()
        .and_then(|v| {
            if v.is_empty() {
                Err(Error::invalid("empty number list"))
            } else {
                Ok(v)
            }
        })
}

/// "a-b" ranges or comma lists of nonnegative integers. An empty string is
/// an empty list.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((a, b)) = s.split_once('-') {
        let lo: usize = a
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad range start {a:?}")))?;
        let hi: usize = b
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad range end {b:?}")))?;
        if hi < lo {
            return Err(Error::invalid(format!("range {s:?} runs backwards")));
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|f| {
            f.trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad integer {f:?}")))
        })
        .collect()
}

/// Comma-separated labels (+1/-1).
pub fn parse_label_list(s: &str) -> Result<Vec<Label>> {
    s.split(',').map(|f| f.trim().parse()).collect()
}

/// Axis-aligned product grid over `[lo, hi]^dim` with the given step,
/// endpoints included (tolerating float drift at the upper edge).
pub fn axis_grid(dim: usize, lo: f64, hi: f64, step: f64) -> Result<Vec<Vec<f64>>> {
    if dim == 0 {
        return Err(Error::invalid("grid dimension must be at least 1"));
    }
    if step.is_nan() || step <= 0.0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(Error::invalid("grid needs lo <= hi and step > 0"));
    }
    let per_axis = ((hi - lo) / step + 1.5).floor() as usize;
    let axis: Vec<f64> = (0..per_axis)
        .map(|k| lo + k as f64 * step)
        .filter(|&v| v <= hi + step * 1e-9)
        .collect();
    let total = axis.len().checked_pow(dim as u32).unwrap_or(usize::MAX);
    if total > 100_000 {
        return Err(Error::GuardExceeded {
            what: "axis grid points",
            limit: 100_000,
            requested: total,
        });
    }
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; dim];
    loop {
        out.push(idx.iter().map(|&i| axis[i]).collect());
        let mut k = dim;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < axis.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Write output atomically to `path`, or to stdout when no path is given.
pub fn emit(path: &Option<PathBuf>, content: &str) -> Result<()> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => write_atomic(p, content),
    }
}

/// Atomic file write: temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    use std::io::Write;
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path)
        .map_err(|e| Error::from(std::io::Error::from(e)))?;
    Ok(())
}

/// Render a point row with round-trip decimal coordinates.
pub fn format_point(coords: &[f64]) -> String {
    coords
        .iter()
        .map(|&v| format_f64(v))
        .collect::<Vec<_>>()
        .join(",")
}
