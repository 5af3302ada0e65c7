use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use psl_core::io::{
    emit_svg, fmt_real, parse_filtration_file, parse_points_csv, parse_pqr, scale_charges,
    write_records_csv, write_spectra_csv, Channel, PqrOptions,
};
use psl_core::{build_rips, sweep, Error, Filtration, LabeledPointCloud, PslRecord, SheafSpec, SweepConfig};

use crate::config::{Format, RunConfig, SheafKind, Source, TGrid};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io { path: PathBuf, source: std::io::Error },
    /// A core error tied to an input file.
    Input { path: PathBuf, source: Error },
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Input { source, .. } | CliError::Core(source) => match source {
                Error::Parse { .. }
                | Error::ZeroLabel { .. }
                | Error::MixedDimensions { .. }
                | Error::DuplicateSimplex(_)
                | Error::ClosureViolation { .. }
                | Error::DuplicatePoints(..) => 4,
                Error::NonSymmetric(_) | Error::Numerical(_) => 6,
                _ => 5,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "{m}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Input { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file<T>(path: &Path, r: psl_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn read_cloud(cfg: &RunConfig, path: &Path, format: Format) -> Result<LabeledPointCloud, CliError> {
    let text = read(path)?;
    let cloud = match format {
        Format::Csv => in_file(path, parse_points_csv(&text))?,
        Format::Pqr => {
            let opts = PqrOptions {
                drop_zero_charge: cfg.drop_zero_charge,
                drop_hydrogens: cfg.drop_hydrogens,
            };
            in_file(path, parse_pqr(&text, opts))?
        }
        Format::Filtration => unreachable!("not a point format"),
    };
    Ok(cloud)
}

fn points_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("pqr") => Format::Pqr,
        _ => Format::Csv,
    }
}

/// Everything the sweep needs, loaded and validated.
pub struct Prepared {
    pub filtration: Filtration,
    pub cloud: Option<LabeledPointCloud>,
    pub scale: Option<f64>,
    pub sheaf: SheafSpec,
    pub sweep: SweepConfig,
}

pub fn prepare(cfg: &RunConfig) -> Result<Prepared, CliError> {
    let (filtration, cloud) = match cfg.source {
        Source::Rips => {
            let cloud = read_cloud(cfg, &cfg.input, cfg.format)?;
            let f = build_rips(&cloud, cfg.rips_radius(), cfg.dmax)?;
            (f, Some(cloud))
        }
        Source::Import => {
            let f = in_file(&cfg.input, parse_filtration_file(&read(&cfg.input)?))?;
            let cloud = match &cfg.points {
                Some(p) => Some(read_cloud(cfg, p, points_format(p))?),
                None => None,
            };
            (f, cloud)
        }
    };
    let (cloud, scale) = match cloud {
        Some(c) if cfg.scale_charges => {
            let (c, s) = scale_charges(&c)?;
            (Some(c), Some(s))
        }
        c => (c, None),
    };
    let sheaf = match cfg.sheaf {
        SheafKind::Constant => SheafSpec::constant(),
        SheafKind::Labeled => {
            let cloud = cloud.as_ref().ok_or_else(|| {
                CliError::Config(
                    "a labeled sheaf on an imported filtration needs --points (or use --sheaf constant)".into(),
                )
            })?;
            if let Some(v) = filtration.max_vertex() {
                if v >= cloud.len() {
                    return Err(Error::MissingLabel {
                        vertex: v,
                        available: cloud.len(),
                    }
                    .into());
                }
            }
            SheafSpec::labeled(cloud, cfg.weight.into())?
        }
    };
    let t_grid = match &cfg.tgrid {
        TGrid::Values(v) => v.clone(),
        TGrid::Births => {
            let mut b: Vec<f64> = filtration.entries().iter().map(|(_, b)| *b).collect();
            b.dedup();
            b
        }
    };
    let mut sweep = SweepConfig::new(cfg.qs.clone(), t_grid, cfg.ps.clone());
    sweep.tol_zero = cfg.tol;
    sweep.keep_spectra = cfg.dump_spectra.is_some() || cfg.sign_flip_report;
    Ok(Prepared {
        filtration,
        cloud,
        scale,
        sheaf,
        sweep,
    })
}

pub fn summary_table(records: &[PslRecord]) -> String {
    let mut s = format!(
        "{:>3} {:>22} {:>22} {:>6} {:>6}  {}\n",
        "q", "t", "p", "n", "betti", "lambda_min"
    );
    for r in records {
        let _ = writeln!(
            s,
            "{:>3} {:>22} {:>22} {:>6} {:>6}  {}",
            r.q,
            fmt_real(r.t),
            fmt_real(r.p),
            r.n,
            r.betti,
            r.lambda_min.map_or_else(|| "-".to_string(), fmt_real)
        );
    }
    s
}

/// Largest change of any eigenvalue when each label is negated in turn.
pub fn sign_flip_report(prep: &Prepared, cfg: &RunConfig, base: &[PslRecord]) -> Result<String, CliError> {
    let cloud = match (&prep.cloud, cfg.sheaf) {
        (Some(c), SheafKind::Labeled) => c,
        _ => return Err(CliError::Config("--sign-flip-report needs a labeled sheaf".into())),
    };
    let mut out = String::from("sign-flip report (max |Δλ| over all cells)\n");
    let mut worst = (0.0f64, 0usize);
    for v in 0..cloud.len() {
        let flipped = cloud.map_labels(|i, x| if i == v { -x } else { x })?;
        let sheaf = SheafSpec::labeled(&flipped, cfg.weight.into())?;
        let recs = sweep(&prep.filtration, &sheaf, &prep.sweep)?;
        let dev = recs
            .iter()
            .zip(base)
            .flat_map(|(a, b)| {
                let (ea, eb) = (a.spectrum.as_deref().unwrap_or(&[]), b.spectrum.as_deref().unwrap_or(&[]));
                ea.iter().zip(eb).map(|(x, y)| (x - y).abs())
            })
            .fold(0.0f64, f64::max);
        if v == 0 || dev > worst.0 {
            worst = (dev, v);
        }
        let _ = writeln!(out, "  vertex {v:>5}: {}", fmt_real(dev));
    }
    let _ = writeln!(out, "largest: vertex {} ({})", worst.1, fmt_real(worst.0));
    Ok(out)
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs the whole pipeline; output files are only written once every
/// cell has been computed and every artifact rendered.
pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    let prep = prepare(cfg)?;
    let records = sweep(&prep.filtration, &prep.sheaf, &prep.sweep)?;

    let mut report = String::new();
    let _ = writeln!(
        report,
        "input {}: {} simplices, sheaf {}{}",
        cfg.input.display(),
        prep.filtration.len(),
        match cfg.sheaf {
            SheafKind::Constant => "constant".to_string(),
            SheafKind::Labeled => format!("labeled (F = {})", psl_core::WeightFunction::from(cfg.weight).name()),
        },
        prep.scale
            .map_or_else(String::new, |s| format!(", labels scaled by {}", fmt_real(s)))
    );
    report.push_str(&summary_table(&records));
    if cfg.sign_flip_report {
        report.push_str(&sign_flip_report(&prep, cfg, &records)?);
    }

    let mut outputs: Vec<(PathBuf, String)> = Vec::new();
    if let Some(p) = &cfg.out_csv {
        outputs.push((p.clone(), write_records_csv(&records)));
    }
    if let Some(p) = &cfg.dump_spectra {
        outputs.push((p.clone(), write_spectra_csv(&records)));
    }
    if let Some(dir) = &cfg.out_svg {
        for &q in &cfg.qs {
            for channel in [Channel::Betti, Channel::Lambda] {
                match emit_svg(&records, channel, q) {
                    Ok(svg) => outputs.push((dir.join(format!("{}_q{q}.svg", channel.name())), svg)),
                    Err(Error::NoData(what)) => {
                        let _ = writeln!(report, "no plot for {what}: nothing to draw");
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    for (path, contents) in &outputs {
        write(path, contents)?;
    }
    Ok(report)
}
