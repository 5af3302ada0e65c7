use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use psl_core::WeightFunction;
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Pqr,
    Filtration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Rips,
    Import,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SheafKind {
    Constant,
    Labeled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    Default,
    Sum,
    One,
}

impl From<Weight> for WeightFunction {
    fn from(w: Weight) -> Self {
        match w {
            Weight::Default => WeightFunction::Default,
            Weight::Sum => WeightFunction::Sum,
            Weight::One => WeightFunction::One,
        }
    }
}

/// Persistent sheaf Laplacian sweeps over labeled point clouds.
///
/// Every option may also be set in a TOML file passed with `--config`
/// (keys are the long flag names with `-` replaced by `_`); flags win.
#[derive(Parser, Debug, Default)]
#[command(name = "psl", version)]
pub struct Args {
    /// TOML file with default settings
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Point cloud (csv, pqr) or filtration file
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Input format [default: from the file extension]
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Build a Rips filtration or import one [default: import for filtration files, rips otherwise]
    #[arg(long, value_enum)]
    pub filtration: Option<Source>,

    /// Labeled points for an imported filtration (vertex i is row i)
    #[arg(long)]
    pub points: Option<PathBuf>,

    /// Rips cutoff radius [default: max t + max p]
    #[arg(long)]
    pub rmax: Option<f64>,

    /// Maximum simplex dimension of the Rips complex [default: 2]
    #[arg(long)]
    pub dmax: Option<usize>,

    /// Sheaf [default: labeled]
    #[arg(long, value_enum)]
    pub sheaf: Option<SheafKind>,

    /// Weight function of the labeled sheaf [default: default]
    #[arg(long, value_enum)]
    pub weight: Option<Weight>,

    /// Degrees, comma separated [default: 0,1]
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<usize>>,

    /// Filtration values: `min:max:steps` or a comma list [default: all distinct births]
    #[arg(long, allow_hyphen_values = true)]
    pub tgrid: Option<String>,

    /// Persistence values, comma separated [default: 0]
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Option<Vec<f64>>,

    /// Relative cut below which an eigenvalue counts as zero [default: 1e-8]
    #[arg(long)]
    pub tol: Option<f64>,

    /// Rescale labels by mean/max pairwise distance before building the sheaf
    #[arg(long)]
    pub scale_charges: bool,

    /// Skip PQR atoms with zero charge instead of failing
    #[arg(long)]
    pub drop_zero_charge: bool,

    /// Skip PQR hydrogen atoms
    #[arg(long)]
    pub drop_hydrogens: bool,

    /// Records CSV
    #[arg(long)]
    pub out_csv: Option<PathBuf>,

    /// Directory for betti/lambda plots, one SVG per (channel, q)
    #[arg(long)]
    pub out_svg: Option<PathBuf>,

    /// Write every eigenvalue to this CSV
    #[arg(long)]
    pub dump_spectra: Option<PathBuf>,

    /// Flip each label's sign in turn and report the largest spectral change
    #[arg(long)]
    pub sign_flip_report: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub format: Option<Format>,
    pub filtration: Option<Source>,
    pub points: Option<PathBuf>,
    pub rmax: Option<f64>,
    pub dmax: Option<usize>,
    pub sheaf: Option<SheafKind>,
    pub weight: Option<Weight>,
    pub q: Option<Vec<usize>>,
    pub tgrid: Option<TGridSpec>,
    pub p: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub scale_charges: Option<bool>,
    pub drop_zero_charge: Option<bool>,
    pub drop_hydrogens: Option<bool>,
    pub out_csv: Option<PathBuf>,
    pub out_svg: Option<PathBuf>,
    pub dump_spectra: Option<PathBuf>,
    pub sign_flip_report: Option<bool>,
}

/// A grid in a config file: the flag syntax, or an array of numbers.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TGridSpec {
    Text(String),
    List(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum TGrid {
    /// Every distinct birth value of the filtration.
    Births,
    Values(Vec<f64>),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: Format,
    pub source: Source,
    pub points: Option<PathBuf>,
    pub rmax: Option<f64>,
    pub dmax: usize,
    pub sheaf: SheafKind,
    pub weight: Weight,
    pub qs: Vec<usize>,
    pub tgrid: TGrid,
    pub ps: Vec<f64>,
    pub tol: f64,
    pub scale_charges: bool,
    pub drop_zero_charge: bool,
    pub drop_hydrogens: bool,
    pub out_csv: Option<PathBuf>,
    pub out_svg: Option<PathBuf>,
    pub dump_spectra: Option<PathBuf>,
    pub sign_flip_report: bool,
}

pub fn parse_tgrid(text: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("bad number `{}` in t grid", s.trim()))
    };
    let grid = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("t grid `{text}` is not min:max:steps"));
        }
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let steps: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("bad step count `{}` in t grid", parts[2].trim()))?;
        match steps {
            0 => return Err("t grid needs at least one step".into()),
            1 => vec![lo],
            _ => (0..steps)
                .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
                .collect(),
        }
    } else {
        text.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(num)
            .collect::<Result<Vec<_>, _>>()?
    };
    check_grid(&grid)?;
    Ok(grid)
}

fn check_grid(grid: &[f64]) -> Result<(), String> {
    if grid.is_empty() {
        return Err("t grid is empty".into());
    }
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err("t grid must be sorted ascending".into());
    }
    Ok(())
}

fn format_from_extension(path: &Path) -> Format {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .as_deref()
    {
        Some("pqr") => Format::Pqr,
        Some("csv") => Format::Csv,
        _ => Format::Filtration,
    }
}

impl RunConfig {
    /// Flags over the file over built-in defaults.
    pub fn resolve(args: Args, file: FileConfig) -> Result<Self, String> {
        let input = args
            .input
            .or(file.input)
            .ok_or("no input given (use --input)")?;
        let format = args
            .format
            .or(file.format)
            .unwrap_or_else(|| format_from_extension(&input));
        let source = args.filtration.or(file.filtration).unwrap_or(match format {
            Format::Filtration => Source::Import,
            _ => Source::Rips,
        });
        match (format, source) {
            (Format::Filtration, Source::Rips) => {
                return Err("a filtration file cannot seed a Rips filtration".into())
            }
            (Format::Csv | Format::Pqr, Source::Import) => {
                return Err("--filtration import needs --format filtration".into())
            }
            _ => {}
        }
        let tgrid = match (args.tgrid, file.tgrid) {
            (Some(s), _) | (None, Some(TGridSpec::Text(s))) => TGrid::Values(parse_tgrid(&s)?),
            (None, Some(TGridSpec::List(v))) => {
                check_grid(&v)?;
                TGrid::Values(v)
            }
            (None, None) => TGrid::Births,
        };
        let qs = args.q.or(file.q).unwrap_or_else(|| vec![0, 1]);
        if qs.is_empty() {
            return Err("no degrees given".into());
        }
        let ps = args.p.or(file.p).unwrap_or_else(|| vec![0.0]);
        if ps.is_empty() {
            return Err("no persistence values given".into());
        }
        if let Some(p) = ps.iter().find(|p| !(**p >= 0.0 && p.is_finite())) {
            return Err(format!("persistence values must be finite and >= 0, got {p}"));
        }
        let tol = args.tol.or(file.tol).unwrap_or(psl_core::spectra::DEFAULT_TOL_ZERO);
        if !(tol > 0.0) {
            return Err(format!("--tol must be positive, got {tol}"));
        }
        let rmax = args.rmax.or(file.rmax);
        if let Some(r) = rmax {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(format!("--rmax must be finite and >= 0, got {r}"));
            }
        }
        if source == Source::Rips && rmax.is_none() && tgrid == TGrid::Births {
            return Err("a Rips filtration needs --rmax or --tgrid".into());
        }
        Ok(RunConfig {
            input,
            format,
            source,
            points: args.points.or(file.points),
            rmax,
            dmax: args.dmax.or(file.dmax).unwrap_or(2),
            sheaf: args.sheaf.or(file.sheaf).unwrap_or(SheafKind::Labeled),
            weight: args.weight.or(file.weight).unwrap_or(Weight::Default),
            qs,
            tgrid,
            ps,
            tol,
            scale_charges: args.scale_charges || file.scale_charges.unwrap_or(false),
            drop_zero_charge: args.drop_zero_charge || file.drop_zero_charge.unwrap_or(false),
            drop_hydrogens: args.drop_hydrogens || file.drop_hydrogens.unwrap_or(false),
            out_csv: args.out_csv.or(file.out_csv),
            out_svg: args.out_svg.or(file.out_svg),
            dump_spectra: args.dump_spectra.or(file.dump_spectra),
            sign_flip_report: args.sign_flip_report || file.sign_flip_report.unwrap_or(false),
        })
    }

    /// Rips radius: explicit, or just enough to cover every `t + p` queried.
    pub fn rips_radius(&self) -> f64 {
        self.rmax.unwrap_or_else(|| {
            let tmax = match &self.tgrid {
                TGrid::Values(v) => v.last().copied().unwrap_or(0.0),
                TGrid::Births => 0.0,
            };
            tmax + self.ps.iter().copied().fold(0.0, f64::max)
        })
    }
}
