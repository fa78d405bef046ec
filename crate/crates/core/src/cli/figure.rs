//! Figure data as CSV series.
//!
//! Time axes are in units of `ω₀t`. Curves are one CSV each; surfaces are a
//! single long-format CSV with the secondary axis as the second column.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;

use super::{usage, CliError};
use crate::protocol::{self, JumpProtocol};

pub const DEFAULT_POINTS: usize = 1000;
pub const DEFAULT_SURFACE_POINTS: usize = 100;

/// Middle curve of the τ family; an unusual fraction, kept as printed.
pub const MIDDLE_TAU: f64 = 59.0 * PI / 62.0;

const OMEGA1_FAMILY: [f64; 4] = [2.0, 3.0, 4.0, 5.0];
const TAU_FAMILY: [f64; 3] = [5.0 * PI / 6.0, MIDDLE_TAU, PI];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// ω(t) step profile
    Fig2,
    /// r(t) in the first interval for several ω₁
    Fig3,
    /// r(t, ω₁) surface
    Fig4,
    /// Variances at λ and λ+π/2 and their product, first interval
    Fig5,
    /// r(t) through both jumps for several τ
    Fig6,
    /// Variance at λ = π/2 through both jumps for several τ
    Fig7,
    /// P_E(τ) for several ω₁
    Fig8,
    /// P_E(τ, ω₁) surface
    Fig9,
}

impl FigureId {
    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
            FigureId::Fig9 => "fig9",
        }
    }
}

/// Partial grid given on the command line; missing fields take the
/// figure's defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridOverride {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
}

impl GridOverride {
    fn is_empty(&self) -> bool {
        self.start.is_none() && self.stop.is_none() && self.count.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    fn resolve(
        o: GridOverride,
        start: f64,
        stop: f64,
        count: usize,
        lower: f64,
        axis: &str,
    ) -> Result<Self, CliError> {
        let g = Grid {
            start: o.start.unwrap_or(start),
            stop: o.stop.unwrap_or(stop),
            count: o.count.unwrap_or(count),
        };
        if g.count < 2 {
            return usage(format!("{axis} grid needs at least 2 points"));
        }
        if !(g.start.is_finite() && g.stop.is_finite() && g.start < g.stop) {
            return usage(format!("{axis} grid needs finite start < stop"));
        }
        if g.start < lower {
            return usage(format!("{axis} grid must start at or above {lower}"));
        }
        Ok(g)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(move |i| {
            if i + 1 == self.count {
                self.stop
            } else {
                self.start + step * i as f64
            }
        })
    }
}

/// Everything a figure can be asked to vary.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub id: FigureId,
    pub omega0: f64,
    pub omega1: Option<f64>,
    pub tau: Option<f64>,
    pub lambda: Option<f64>,
    pub grid: GridOverride,
    pub secondary: GridOverride,
}

impl SweepSpec {
    pub fn new(id: FigureId) -> Self {
        Self {
            id,
            omega0: 1.0,
            omega1: None,
            tau: None,
            lambda: None,
            grid: GridOverride::default(),
            secondary: GridOverride::default(),
        }
    }

    fn forbid(
        &self,
        omega1: bool,
        tau: bool,
        lambda: bool,
        secondary: bool,
    ) -> Result<(), CliError> {
        let id = self.id.name();
        let unused = [
            (omega1 && self.omega1.is_some(), "--omega1"),
            (tau && self.tau.is_some(), "--tau"),
            (lambda && self.lambda.is_some(), "--lambda"),
            (secondary && !self.secondary.is_empty(), "--secondary-*"),
        ];
        match unused.iter().find(|(bad, _)| *bad) {
            Some((_, flag)) => usage(format!("{flag} does not apply to {id}")),
            None => Ok(()),
        }
    }

    fn omega1_family(&self) -> Vec<f64> {
        self.omega1
            .map_or_else(|| OMEGA1_FAMILY.to_vec(), |w| vec![w])
    }

    fn tau_family(&self) -> Vec<f64> {
        self.tau.map_or_else(|| TAU_FAMILY.to_vec(), |t| vec![t])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Surface in long format: column 1 is the secondary axis.
    pub surface: bool,
}

fn curve(name: String, columns: Vec<&'static str>, rows: Vec<Vec<f64>>) -> Series {
    Series {
        name,
        columns,
        rows,
        surface: false,
    }
}

fn protocol(omega0: f64, omega1: f64, tau: f64) -> Result<JumpProtocol, CliError> {
    JumpProtocol::new(omega0, omega1, tau).map_err(|e| CliError::Usage(e.to_string()))
}

/// P_E with τ = 0 read as "no jump at all".
fn excitation(omega0: f64, omega1: f64, tau: f64) -> Result<f64, CliError> {
    if tau == 0.0 {
        return Ok(0.0);
    }
    Ok(protocol::excitation_probability(&protocol(
        omega0, omega1, tau,
    )?))
}

pub fn build(spec: &SweepSpec) -> Result<Vec<Series>, CliError> {
    let w0 = spec.omega0;
    if !(w0.is_finite() && w0 > 0.0) {
        return usage("--omega0 must be positive and finite");
    }
    let id = spec.id.name();
    let time = |start, stop| Grid::resolve(spec.grid, start, stop, DEFAULT_POINTS, 0.0, "time");
    match spec.id {
        FigureId::Fig2 => {
            spec.forbid(false, false, true, true)?;
            let p = protocol(
                w0,
                spec.omega1.unwrap_or(3.0),
                spec.tau.unwrap_or(TAU_FAMILY[0]),
            )?;
            let g = Grid::resolve(
                spec.grid,
                -1.0,
                4.0,
                DEFAULT_POINTS,
                f64::NEG_INFINITY,
                "time",
            )?;
            let rows = g
                .points()
                .map(|x| vec![x, p.frequency_at(x / w0)])
                .collect();
            Ok(vec![curve(id.into(), vec!["omega0_t", "omega"], rows)])
        }
        FigureId::Fig3 => {
            spec.forbid(false, true, true, true)?;
            let g = time(0.0, PI)?;
            spec.omega1_family()
                .into_iter()
                .map(|w1| {
                    let p = protocol(w0, w1, g.stop / w0)?;
                    let rows = g
                        .points()
                        .map(|x| Ok(vec![x, protocol::squeezing_parameter(&p, x / w0)?]))
                        .collect::<Result<_, crate::Error>>()?;
                    Ok(curve(
                        format!("{id}_omega1_{w1}"),
                        vec!["omega0_t", "r"],
                        rows,
                    ))
                })
                .collect()
        }
        FigureId::Fig4 => {
            spec.forbid(true, true, true, false)?;
            let g = Grid::resolve(spec.grid, 0.0, PI, DEFAULT_SURFACE_POINTS, 0.0, "time")?;
            let s = Grid::resolve(
                spec.secondary,
                1.0,
                5.0,
                DEFAULT_SURFACE_POINTS,
                f64::MIN_POSITIVE,
                "omega1",
            )?;
            let mut rows = Vec::with_capacity(g.count * s.count);
            for w1 in s.points() {
                let p = protocol(w0, w1, g.stop / w0)?;
                for x in g.points() {
                    rows.push(vec![x, w1, protocol::squeezing_parameter(&p, x / w0)?]);
                }
            }
            Ok(vec![Series {
                name: id.into(),
                columns: vec!["omega0_t", "omega1", "r"],
                rows,
                surface: true,
            }])
        }
        FigureId::Fig5 => {
            spec.forbid(false, true, false, true)?;
            let g = time(0.0, PI)?;
            let lambda = spec.lambda.unwrap_or(0.0);
            let p = protocol(w0, spec.omega1.unwrap_or(3.0), g.stop / w0)?;
            let rows = g
                .points()
                .map(|x| {
                    let s = protocol::state_at(&p, x / w0)?.squeezed;
                    let (a, b) = (s.variance(lambda), s.variance(lambda + PI / 2.0));
                    Ok(vec![x, a, b, a * b])
                })
                .collect::<Result<_, crate::Error>>()?;
            Ok(vec![curve(
                id.into(),
                vec![
                    "omega0_t",
                    "variance_lambda",
                    "variance_lambda_perp",
                    "product",
                ],
                rows,
            )])
        }
        FigureId::Fig6 | FigureId::Fig7 => {
            let variance = spec.id == FigureId::Fig7;
            spec.forbid(false, false, !variance, true)?;
            let g = time(0.0, 3.0 * PI)?;
            let w1 = spec.omega1.unwrap_or(3.0);
            let lambda = spec.lambda.unwrap_or(PI / 2.0);
            spec.tau_family()
                .into_iter()
                .map(|tau| {
                    let p = protocol(w0, w1, tau)?;
                    let rows = g
                        .points()
                        .map(|x| {
                            let s = protocol::state_at(&p, x / w0)?.squeezed;
                            Ok(vec![x, if variance { s.variance(lambda) } else { s.r() }])
                        })
                        .collect::<Result<_, crate::Error>>()?;
                    let y = if variance { "variance" } else { "r" };
                    Ok(curve(format!("{id}_tau_{tau}"), vec!["omega0_t", y], rows))
                })
                .collect()
        }
        FigureId::Fig8 => {
            spec.forbid(false, true, true, true)?;
            let g = Grid::resolve(spec.grid, 0.0, PI, DEFAULT_POINTS, 0.0, "tau")?;
            spec.omega1_family()
                .into_iter()
                .map(|w1| {
                    let rows = g
                        .points()
                        .map(|tau| Ok(vec![tau, w1, excitation(w0, w1, tau)?]))
                        .collect::<Result<_, CliError>>()?;
                    Ok(curve(
                        format!("{id}_omega1_{w1}"),
                        vec!["tau", "omega1", "P_E"],
                        rows,
                    ))
                })
                .collect()
        }
        FigureId::Fig9 => {
            spec.forbid(true, true, true, false)?;
            let g = Grid::resolve(spec.grid, 0.0, PI, DEFAULT_SURFACE_POINTS, 0.0, "tau")?;
            let s = Grid::resolve(
                spec.secondary,
                1.0,
                5.0,
                DEFAULT_SURFACE_POINTS,
                f64::MIN_POSITIVE,
                "omega1",
            )?;
            let mut rows = Vec::with_capacity(g.count * s.count);
            for w1 in s.points() {
                for tau in g.points() {
                    rows.push(vec![tau, w1, excitation(w0, w1, tau)?]);
                }
            }
            Ok(vec![Series {
                name: id.into(),
                columns: vec!["tau", "omega1", "P_E"],
                rows,
                surface: true,
            }])
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv(w: &mut dyn Write, series: &Series) -> Result<(), CliError> {
    let mut csv = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    csv.write_record(&series.columns)?;
    for row in &series.rows {
        csv.write_record(row.iter().map(|&x| format_value(x)))?;
    }
    csv.flush()?;
    Ok(())
}

/// All series on one stream, each preceded by a `# name` line.
pub fn write_stream(w: &mut dyn Write, series: &[Series]) -> Result<(), CliError> {
    for s in series {
        writeln!(w, "# {}", s.name)?;
        write_csv(w, s)?;
    }
    Ok(())
}

pub fn write_dir(dir: &Path, id: FigureId, series: &[Series], svg: bool) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    for s in series {
        let mut f =
            std::io::BufWriter::new(std::fs::File::create(dir.join(format!("{}.csv", s.name)))?);
        write_csv(&mut f, s)?;
        f.flush()?;
    }
    if svg {
        std::fs::write(
            dir.join(format!("{}.svg", id.name())),
            render_svg(id, series),
        )?;
    }
    Ok(())
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Polylines of `(x, y)`; surfaces are drawn as one line per secondary value.
fn lines(series: &[Series]) -> Vec<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for s in series {
        if s.surface {
            let mut current: Vec<(f64, f64)> = Vec::new();
            let mut key = f64::NAN;
            for row in &s.rows {
                if row[1] != key && !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
                key = row[1];
                current.push((row[0], row[2]));
            }
            out.push(current);
        } else {
            for col in 1..s.columns.len() {
                out.push(s.rows.iter().map(|r| (r[0], r[col])).collect());
            }
        }
    }
    out
}

pub fn render_svg(id: FigureId, series: &[Series]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 40.0;
    let lines = lines(series);
    let pts = || lines.iter().flatten();
    let (x0, x1) = pts().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
        (a.min(p.0), b.max(p.0))
    });
    let (mut y0, mut y1) = pts().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
        (a.min(p.1), b.max(p.1))
    });
    if y1 - y0 < 1e-12 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * M,
        H - 2.0 * M
    );
    let _ = writeln!(
        svg,
        r#"<text x="{M}" y="{}" font-size="12">{}</text>"#,
        M - 10.0,
        id.name()
    );
    let _ = writeln!(
        svg,
        r#"<text x="{M}" y="{}" font-size="10">{x0:.3}</text>"#,
        H - M + 14.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{x1:.3}</text>"#,
        W - M,
        H - M + 14.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{y0:.3}</text>"#,
        M - 4.0,
        H - M
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{y1:.3}</text>"#,
        M - 4.0,
        M + 10.0
    );
    for (i, line) in lines.iter().enumerate() {
        let mut d = String::new();
        for &(x, y) in line {
            let _ = write!(d, "{:.2},{:.2} ", sx(x), sy(y));
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="1" points="{}"/>"#,
            PALETTE[i % PALETTE.len()],
            d.trim_end()
        );
    }
    svg.push_str("</svg>\n");
    svg
}
