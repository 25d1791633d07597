use std::path::{Path, PathBuf};

use geoball::barta::cosine_test_function;
use geoball::spline::NaturalSpline;
use geoball::{Ball, MetricProfile, RadialFunction, RadialGrid};
use serde::{Serialize, Serializer};

use crate::args::{ManifoldArgs, OutputFormat, Space};
use crate::error::{usage, CliError};

/// Starting function for the quotient and the refinement loop.
#[derive(Debug, Clone)]
pub enum TestFn {
    /// `cos(tπ/2r)`
    Cosine,
    /// `u ≡ 1`
    One,
    File { path: PathBuf, spline: NaturalSpline },
}

impl TestFn {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        match spec {
            "cos" | "cosine" => Ok(TestFn::Cosine),
            "one" | "1" => Ok(TestFn::One),
            path => {
                let path = PathBuf::from(path);
                let samples = read_pairs(&path, ["t", "u"])?;
                let (ts, us) = samples.into_iter().unzip();
                let spline = NaturalSpline::new(ts, us)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                Ok(TestFn::File { path, spline })
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            TestFn::Cosine => "cos".into(),
            TestFn::One => "one".into(),
            TestFn::File { path, .. } => path.display().to_string(),
        }
    }

    /// Samples the test function on `grid`, returning any warnings raised.
    pub fn sample(&self, grid: &RadialGrid) -> Result<(RadialFunction, Vec<String>), CliError> {
        match self {
            TestFn::Cosine => Ok((cosine_test_function(grid), Vec::new())),
            TestFn::One => Ok((RadialFunction::from_fn(*grid, |_| 1.0), Vec::new())),
            TestFn::File { path, spline } => resample(path, spline, grid),
        }
    }
}

impl Serialize for TestFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

fn resample(
    path: &Path,
    spline: &NaturalSpline,
    grid: &RadialGrid,
) -> Result<(RadialFunction, Vec<String>), CliError> {
    let knots = spline.knots();
    let r = grid.radius();
    let (first, last) = (knots[0], knots[knots.len() - 1]);
    if first.abs() > 1e-12 || last < r * (1.0 - 1e-9) {
        return Err(usage(format!(
            "{}: samples cover [{first}, {last}] but the ball needs [0, {r}]",
            path.display()
        )));
    }
    let mut clamped = 0;
    let values: Vec<f64> = grid
        .nodes()
        .map(|t| {
            let v = spline.eval(t.min(last));
            if v < 0.0 {
                clamped += 1;
                0.0
            } else {
                v
            }
        })
        .collect();
    if values.iter().all(|v| *v == 0.0) {
        return Err(usage(format!("{}: test function vanishes on the whole grid", path.display())));
    }
    let mut warnings = Vec::new();
    if clamped > 0 {
        warnings.push(format!(
            "{}: {clamped} interpolated value(s) were negative and have been clamped to 0",
            path.display()
        ));
    }
    let u = RadialFunction::from_values(*grid, values)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((u, warnings))
}

/// Reads a two-column CSV whose header must be exactly `columns`.
pub fn read_pairs(path: &Path, columns: [&str; 2]) -> Result<Vec<(f64, f64)>, CliError> {
    let fail = |msg: String| usage(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| fail(e.to_string()))?;
    let header = reader.headers().map_err(|e| fail(e.to_string()))?.clone();
    if header.len() != 2 || header[0] != *columns[0] || header[1] != *columns[1] {
        return Err(fail(format!(
            "expected header `{},{}`, found `{}`",
            columns[0],
            columns[1],
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    reader
        .deserialize::<(f64, f64)>()
        .map(|row| row.map_err(|e| fail(e.to_string())))
        .collect()
}

/// Validated settings shared by every per-ball subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub space: Space,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_csv: Option<PathBuf>,
    pub dim: usize,
    pub test_fn: TestFn,
    pub grid_n: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub output: OutputFormat,
    #[serde(skip)]
    pub profile: MetricProfile,
}

impl RunConfig {
    pub fn from_args(args: &ManifoldArgs) -> Result<Self, CliError> {
        if args.dim < 2 {
            return Err(usage(format!("--dim must be at least 2, got {}", args.dim)));
        }
        if !(args.tol > 0.0 && args.tol.is_finite()) {
            return Err(usage(format!("--tol must be positive, got {}", args.tol)));
        }
        if args.max_iters == 0 {
            return Err(usage("--max-iters must be at least 1"));
        }
        if args.profile_csv.is_some() && args.space != Space::Tabulated {
            return Err(usage("--profile-csv only applies to --space tabulated"));
        }
        RadialGrid::new(1.0, args.grid_n).map_err(|e| usage(format!("--grid-n: {e}")))?;

        let (curvature, profile) = match args.space {
            Space::Euclidean => match args.curvature {
                None | Some(0.0) => (Some(0.0), MetricProfile::euclidean()),
                Some(k) => return Err(usage(format!("euclidean space has curvature 0, got {k}"))),
            },
            Space::Sphere => {
                let k = args.curvature.unwrap_or(1.0);
                (Some(k), MetricProfile::sphere(k).map_err(|e| usage(format!("--curvature: {e}")))?)
            }
            Space::Hyperbolic => {
                let k = args.curvature.unwrap_or(-1.0);
                (Some(k), MetricProfile::hyperbolic(k).map_err(|e| usage(format!("--curvature: {e}")))?)
            }
            Space::Tabulated => {
                if args.curvature.is_some() {
                    return Err(usage("--curvature does not apply to a tabulated profile"));
                }
                let path = args
                    .profile_csv
                    .as_ref()
                    .ok_or_else(|| usage("--space tabulated needs --profile-csv"))?;
                let samples = read_pairs(path, ["t", "f"])?;
                let profile = MetricProfile::tabulated(&samples)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                (None, profile)
            }
        };

        Ok(Self {
            space: args.space,
            curvature,
            profile_csv: args.profile_csv.clone(),
            dim: args.dim,
            test_fn: TestFn::parse(&args.test_fn)?,
            grid_n: args.grid_n,
            tol: args.tol,
            max_iters: args.max_iters,
            output: args.output,
            profile,
        })
    }

    pub fn ball(&self, radius: f64) -> Result<Ball, CliError> {
        Ball::new(self.dim, radius, self.profile.clone()).map_err(|e| usage(e.to_string()))
    }

    pub fn grid(&self, radius: f64) -> Result<RadialGrid, CliError> {
        Ok(RadialGrid::new(radius, self.grid_n)?)
    }

    /// One-line summary for pretty output.
    pub fn describe(&self) -> String {
        let space = match (self.space, self.curvature) {
            (Space::Sphere | Space::Hyperbolic, Some(k)) => {
                format!("{} (curvature {k})", self.profile.kind().name())
            }
            (Space::Tabulated, _) => format!(
                "tabulated ({})",
                self.profile_csv.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
            ),
            _ => self.profile.kind().name().to_string(),
        };
        format!("{space}, n = {}, N = {}, test function {}", self.dim, self.grid_n, self.test_fn.label())
    }
}
