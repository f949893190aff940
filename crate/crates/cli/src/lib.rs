//! Command implementations shared by the `kh` and `hfk` binaries.
//!
//! Every command returns its output as a string so the binaries stay thin
//! and tests can call the commands directly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use kh_core::algebra::{BigradedDims, DeltaGradedDims, ExactField};
use kh_core::diagram::{generate_family, parse_pd, DiagramError, FamilySpec, PlanarDiagram};
use kh_core::gridhfk::{self, GridDiagram, GridError, HFKDims};
use kh_core::khovanov::{self, KhError, KhOptions, KhReport};
use kh_core::lee;
use kh_core::skein::{closed_form_table, Family};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const SIZE_GUARD: i32 = 3;
    pub const INVALID_INPUT: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Kh(#[from] KhError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Grid(GridError::Parse(_)) => exit::PARSE,
            CliError::Kh(KhError::TooLarge { .. }) | CliError::Grid(GridError::TooLarge { .. }) => exit::SIZE_GUARD,
            CliError::Io { .. } => exit::FAILURE,
            _ => exit::INVALID_INPUT,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub fn load_pd(path: &Path) -> Result<PlanarDiagram, CliError> {
    parse_pd(&read(path)?).map_err(|e| CliError::Parse { path: path.to_owned(), message: e.to_string() })
}

pub fn load_grid(path: &Path) -> Result<GridDiagram, CliError> {
    GridDiagram::from_json(&read(path)?).map_err(|e| match e {
        GridError::Parse(message) | GridError::Invalid(message) => CliError::Parse { path: path.to_owned(), message },
        other => other.into(),
    })
}

/// Canonical JSON text: sorted keys, two-space indent, trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn write_json(path: Option<&Path>, v: &Value) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, canonical_json(v)).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    }
    Ok(())
}

fn delta_text(d: &DeltaGradedDims) -> String {
    d.iter().map(|(k, n)| format!("{k}:{n}")).collect::<Vec<_>>().join(" ")
}

fn delta_json(d: &DeltaGradedDims) -> Value {
    Value::Array(d.iter().map(|(k, n)| json!([k, n])).collect())
}

fn dims_json(b: &BigradedDims) -> Value {
    Value::Array(b.iter().map(|(i, j, d)| json!([i, j, d])).collect())
}

fn id_of(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

pub struct ComputeArgs {
    pub pd: PathBuf,
    pub ring: ExactField,
    pub reduced: bool,
    pub delta: bool,
    pub euler: bool,
    pub json: Option<PathBuf>,
}

/// `kh compute`: the table on the first line, then the optional extras.
pub fn cmd_compute(a: &ComputeArgs) -> Result<String, CliError> {
    let d = load_pd(&a.pd)?;
    let report = KhReport::compute(&d, a.ring, a.reduced, &KhOptions::default())?;
    let mut out = report.dims.to_text();
    out.push('\n');
    if a.delta {
        writeln!(out, "delta: {}", delta_text(&khovanov::delta_collapse(&report.dims))).unwrap();
    }
    if a.euler {
        let e = khovanov::graded_euler_characteristic(&report.dims);
        let terms: Vec<String> = e.terms().map(|(k, c)| format!("{c}q^{k}")).collect();
        writeln!(out, "euler: {}", terms.join(" + ")).unwrap();
    }
    write_json(a.json.as_deref(), &report.to_json())?;
    Ok(out)
}

pub struct FamilyArgs {
    pub base: PathBuf,
    pub range: std::ops::RangeInclusive<usize>,
    pub ring: ExactField,
    pub jobs: Option<usize>,
    pub json: Option<PathBuf>,
}

fn template_verdict(n: usize, dims: &BigradedDims) -> Value {
    if n < 8 {
        return Value::Null;
    }
    let matched: Vec<&str> =
        [Family::K, Family::Tau].into_iter().filter(|&f| closed_form_table(f, n as i32) == *dims).map(Family::name).collect();
    match matched.as_slice() {
        [] => json!("mismatch"),
        [f] => json!(f),
        _ => json!("ambiguous"),
    }
}

fn family_member(base: &PlanarDiagram, n: usize, ring: ExactField) -> Result<Value, CliError> {
    let d = generate_family(&FamilySpec { base: base.clone(), twists: n })?;
    let opts = KhOptions::default();
    let dims = khovanov::kh_with(&d, ring, &opts)?;
    let s = lee::s_invariant_with(&d, &opts)?;
    Ok(json!({
        "n": n,
        "crossings": d.crossing_count(),
        "kh": dims.to_text(),
        "dims": dims_json(&dims),
        "total": dims.total(),
        "delta": delta_json(&khovanov::delta_collapse(&dims)),
        "s": s,
        "template": template_verdict(n, &dims),
    }))
}

/// `kh family`: one JSON object per line, in increasing `n`.
pub fn cmd_family(a: &FamilyArgs) -> Result<String, CliError> {
    let base = load_pd(&a.base)?;
    if base.band_site().is_none() {
        return Err(DiagramError::MissingBandSite.into());
    }
    let ns: Vec<usize> = a.range.clone().collect();
    let run = || ns.par_iter().map(|&n| family_member(&base, n, a.ring)).collect::<Result<Vec<_>, _>>();
    let rows = match a.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let mut out = String::new();
    for r in &rows {
        out.push_str(&serde_json::to_string(r).expect("values serialize"));
        out.push('\n');
    }
    write_json(a.json.as_deref(), &Value::Array(rows))?;
    Ok(out)
}

/// Khovanov data of two diagrams side by side. The flags are derived from
/// the tables every time they are asked for.
#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub ids: [String; 2],
    pub ring: ExactField,
    pub tables: [BigradedDims; 2],
    pub s: [Option<i32>; 2],
}

impl ComparisonReport {
    pub fn compute(a: (&str, &PlanarDiagram), b: (&str, &PlanarDiagram), ring: ExactField) -> Result<Self, CliError> {
        let opts = KhOptions::default();
        let s_of = |d: &PlanarDiagram| if d.is_knot() { lee::s_invariant_with(d, &opts).map(Some) } else { Ok(None) };
        Ok(ComparisonReport {
            ids: [a.0.to_string(), b.0.to_string()],
            ring,
            tables: [khovanov::kh_with(a.1, ring, &opts)?, khovanov::kh_with(b.1, ring, &opts)?],
            s: [s_of(a.1)?, s_of(b.1)?],
        })
    }

    pub fn totals(&self) -> [u64; 2] {
        [self.tables[0].total(), self.tables[1].total()]
    }

    pub fn bigraded_equal(&self) -> bool {
        self.tables[0] == self.tables[1]
    }

    pub fn deltas(&self) -> [DeltaGradedDims; 2] {
        [khovanov::delta_collapse(&self.tables[0]), khovanov::delta_collapse(&self.tables[1])]
    }

    /// `δ`-tables related by `δ ↦ −δ`.
    pub fn delta_swap(&self) -> bool {
        let [a, b] = self.deltas();
        a.reflected() == b
    }

    pub fn euler_equal(&self) -> bool {
        khovanov::graded_euler_characteristic(&self.tables[0]) == khovanov::graded_euler_characteristic(&self.tables[1])
    }

    pub fn to_json(&self) -> Value {
        let [da, db] = self.deltas();
        json!({
            "pair": self.ids,
            "ring": self.ring.name(),
            "totals": self.totals(),
            "bigraded_equal": self.bigraded_equal(),
            "delta": [delta_json(&da), delta_json(&db)],
            "delta_swap": self.delta_swap(),
            "euler_equal": self.euler_equal(),
            "s": self.s,
        })
    }
}

pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    pub ring: ExactField,
    pub json: Option<PathBuf>,
}

pub fn cmd_compare(a: &CompareArgs) -> Result<String, CliError> {
    let (da, db) = (load_pd(&a.a)?, load_pd(&a.b)?);
    let report = ComparisonReport::compute((&id_of(&a.a), &da), (&id_of(&a.b), &db), a.ring)?;
    let v = report.to_json();
    write_json(a.json.as_deref(), &v)?;
    Ok(canonical_json(&v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfkFlavor {
    Hat,
    Minus,
}

pub struct HfkArgs {
    pub file: PathBuf,
    pub flavor: HfkFlavor,
    pub tau: bool,
    pub delta: bool,
    pub json: Option<PathBuf>,
}

/// Maslov grading down the side (largest first), Alexander grading along
/// the top.
pub fn hfk_table_text(h: &HFKDims) -> String {
    if h.is_empty() {
        return "(empty)\n".into();
    }
    let ms: Vec<i32> = h.iter().map(|(m, _, _)| m).collect();
    let as_: Vec<i32> = h.iter().map(|(_, a, _)| a).collect();
    let (amin, amax) = (*as_.iter().min().unwrap(), *as_.iter().max().unwrap());
    let (mmin, mmax) = (*ms.iter().min().unwrap(), *ms.iter().max().unwrap());
    let cell = |d: u64| match d {
        0 => ".".to_string(),
        1 => "F".to_string(),
        d => format!("F^{d}"),
    };
    let mut out = format!("{:>4} |", "m\\a");
    for a in amin..=amax {
        write!(out, "{a:>5}").unwrap();
    }
    out.push('\n');
    for m in (mmin..=mmax).rev() {
        write!(out, "{m:>4} |").unwrap();
        for a in amin..=amax {
            write!(out, "{:>5}", cell(h.get(m, a))).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "dim = {}", h.total()).unwrap();
    out
}

pub fn cmd_hfk(a: &HfkArgs) -> Result<String, CliError> {
    let g = load_grid(&a.file)?;
    let mut out = String::new();
    let mut report = match a.flavor {
        HfkFlavor::Hat => {
            let h = gridhfk::hat_hfk(&g)?;
            out.push_str(&hfk_table_text(&h));
            if a.delta {
                writeln!(out, "delta: {}", delta_text(&gridhfk::hfk_delta_collapse(&h))).unwrap();
            }
            gridhfk::hat_report(&g, &h)
        }
        HfkFlavor::Minus => {
            let m = gridhfk::minus_hfk(&g)?;
            for (mm, aa, d) in m.towers.iter() {
                writeln!(out, "tower F[U] x{d} at (m,a) = ({mm},{aa})").unwrap();
            }
            for (k, gens) in &m.torsion {
                for (mm, aa, d) in gens.iter() {
                    writeln!(out, "torsion F[U]/U^{k} x{d} at (m,a) = ({mm},{aa})").unwrap();
                }
            }
            if a.delta {
                log::warn!("--delta applies to the hat flavor only");
            }
            let mut v = m.to_json();
            v["flavor"] = json!("minus");
            v["size"] = json!(g.size);
            v
        }
    };
    if a.tau {
        let t = gridhfk::tau(&g)?;
        writeln!(out, "tau: {t}").unwrap();
        report["tau"] = json!(t);
    }
    write_json(a.json.as_deref(), &report)?;
    Ok(out)
}

/// Parses `a..b` (inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number in range {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|n| n..=n),
    }
}

pub fn parse_ring(s: &str) -> Result<ExactField, String> {
    ExactField::parse(s).ok_or_else(|| format!("unknown ring {s:?} (expected Q or F2)"))
}

/// Prints the result of a command and converts errors to exit codes.
pub fn finish(r: Result<String, CliError>) -> i32 {
    match r {
        Ok(text) => {
            print!("{text}");
            exit::OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
