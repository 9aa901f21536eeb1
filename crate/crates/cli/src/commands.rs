use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use fueter_core::acceptance::{self, CriterionReport};
use fueter_core::io::{tabulated_axial_field, GridFile, GridFileMeta, GridPoint, GridValue};
use fueter_core::jet::{Holomorphic, HolomorphicExpr};
use fueter_core::oracles::{builtin_axial_field, known_primitive};
use fueter_core::verify::{construction_identity_residual, kernel_check, polynomial_fit_residual, roundtrip, tensor_grid, GridSpec, KernelReport, ResidualReport, RoundTripReport};
use fueter_core::{builtin_pk, fueter_map, invert, AxialFunction, FueterConfig, FueterPrimitive, Paravector, PkVariant};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::CliError;

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    match cfg.command {
        "forward" => forward(cfg),
        "invert" => invert_cmd(cfg),
        "roundtrip" => roundtrip_cmd(cfg),
        "kernel" => kernel(cfg),
        "oracles" => suite(
            cfg,
            vec![
                acceptance::cauchy_kernel_quadrature(),
                acceptance::sphere_kernel_inversion(),
                acceptance::sphere_integral(),
            ],
        ),
        "selftest" => suite(cfg, acceptance::run_all()),
        other => unreachable!("unknown command {other}"),
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_json<T: Serialize>(cfg: &RunConfig, value: &T) -> Result<(), CliError> {
    let mut w = sink(cfg.out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::Config(e.to_string()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| CliError::Config(e.to_string()))
}

fn write_grid(cfg: &RunConfig, grid: &GridFile) -> Result<(), CliError> {
    let mut w = sink(cfg.out.as_deref())?;
    match cfg.format {
        Format::Json => grid.write_json(&mut w)?,
        Format::Csv => grid.write_csv(&mut w)?,
    }
    w.flush().map_err(|e| CliError::Config(e.to_string()))
}

fn meta(cfg: &RunConfig, rect: [f64; 4]) -> GridFileMeta {
    GridFileMeta {
        m: cfg.m,
        k: cfg.k,
        rect,
        nx0: cfg.grid.0,
        nr: cfg.grid.1,
    }
}

fn points(cfg: &RunConfig, rect: [f64; 4]) -> Vec<(f64, f64)> {
    let [a, b, c, d] = rect;
    tensor_grid(a, b, c, d, cfg.grid.0, cfg.grid.1)
}

fn forward(cfg: &RunConfig) -> Result<(), CliError> {
    let h = HolomorphicExpr::parse(cfg.h.as_deref().unwrap_or_default()).map_err(|e| CliError::Config(e.to_string()))?;
    let fcfg = FueterConfig::new(cfg.m, cfg.k)?;
    let pk = builtin_pk(cfg.m, cfg.k, PkVariant::default()).map_err(|e| CliError::Config(e.to_string()))?;
    let mut direction = vec![0.0; cfg.m];
    direction[0] = 1.0;
    let rect = cfg.rect.as_array();
    let points = points(cfg, rect)
        .par_iter()
        .map(|&(x0, r)| {
            let p = Paravector::from_axial(x0, r, &direction)?;
            let value = fueter_map(&h, &pk, &fcfg, &p)?;
            Ok(GridPoint {
                x0,
                r,
                value: GridValue::Multivector(value.to_pairs(false)),
            })
        })
        .collect::<fueter_core::Result<Vec<_>>>()?;
    write_grid(cfg, &GridFile { meta: meta(cfg, rect), points })
}

fn load_field(cfg: &RunConfig) -> Result<AxialFunction, CliError> {
    let name = cfg.field.as_deref().unwrap_or_default();
    if name.ends_with(".json") {
        let file = File::open(name).map_err(|e| CliError::Config(format!("cannot open {name}: {e}")))?;
        let grid = GridFile::read_json(file).map_err(|e| CliError::Config(e.to_string()))?;
        if (grid.meta.m, grid.meta.k) != (cfg.m, cfg.k) {
            return Err(CliError::Config(format!(
                "{name} holds a field for m = {}, k = {}",
                grid.meta.m, grid.meta.k
            )));
        }
        let pk = builtin_pk(cfg.m, cfg.k, PkVariant::default()).map_err(|e| CliError::Config(e.to_string()))?;
        return tabulated_axial_field(&grid, pk).map_err(|e| CliError::Config(e.to_string()));
    }
    builtin_axial_field(name, cfg.rect, cfg.m, cfg.k).map_err(|e| CliError::Config(e.to_string()))
}

fn build_primitive(cfg: &RunConfig) -> Result<FueterPrimitive, CliError> {
    let field = load_field(cfg)?;
    Ok(invert(&field, cfg.init.as_deref(), &cfg.quad, &cfg.ode)?)
}

#[derive(Serialize)]
struct Trajectories {
    x0: Vec<f64>,
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct GaugeReport {
    /// largest degree of the real polynomial gauge, 2k + m - 2
    degree: usize,
    coeffs: Vec<f64>,
    residual: f64,
}

#[derive(Serialize)]
struct InvertOutput {
    order: u32,
    kn: String,
    init: Vec<f64>,
    trajectories: Trajectories,
    grid: GridFile,
    gauge: Option<GaugeReport>,
}

fn trajectories(prim: &FueterPrimitive) -> Trajectories {
    let sol = prim.trajectories().solution();
    let n = prim.order() as usize;
    let values = sol.values();
    Trajectories {
        x0: sol.nodes().collect(),
        alpha: (0..n).map(|j| values.iter().map(|y| y[j]).collect()).collect(),
        beta: (0..n).map(|j| values.iter().map(|y| y[n + j]).collect()).collect(),
    }
}

fn gauge(cfg: &RunConfig, grid: &GridFile) -> Result<Option<GaugeReport>, CliError> {
    let Some(h) = cfg.field.as_deref().map(|f| known_primitive(f, cfg.m, cfg.k)).transpose()?.flatten() else {
        return Ok(None);
    };
    let degree = 2 * cfg.k as usize + cfg.m - 2;
    let mut samples = Vec::with_capacity(grid.points.len());
    for p in &grid.points {
        let GridValue::Pair([u, v]) = p.value else { unreachable!() };
        let z = Complex64::new(p.x0, p.r);
        samples.push((z, Complex64::new(u, v) - h.eval(z)?));
    }
    if samples.len() < degree + 2 {
        return Ok(None);
    }
    let fit = polynomial_fit_residual(&samples, degree)?;
    Ok(Some(GaugeReport {
        degree,
        coeffs: fit.coeffs,
        residual: fit.residual,
    }))
}

fn trajectory_path(out: &Path) -> PathBuf {
    let mut name = out.file_stem().unwrap_or_default().to_os_string();
    name.push(".trajectories.csv");
    out.with_file_name(name)
}

fn invert_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let prim = build_primitive(cfg)?;
    let rect = prim.rect().as_array();
    let points = points(cfg, rect)
        .par_iter()
        .map(|&(x0, r)| {
            let (u, v) = prim.eval(x0, r)?;
            Ok(GridPoint { x0, r, value: GridValue::Pair([u, v]) })
        })
        .collect::<fueter_core::Result<Vec<_>>>()?;
    let grid = GridFile { meta: meta(cfg, rect), points };
    let gauge = gauge(cfg, &grid)?;
    if let Some(g) = &gauge {
        eprintln!("gauge fit against the known primitive: degree {}, residual {:.3e}", g.degree, g.residual);
    }
    match cfg.format {
        Format::Json => write_json(
            cfg,
            &InvertOutput {
                order: prim.order(),
                kn: prim.kn().to_string(),
                init: prim.init().to_vec(),
                trajectories: trajectories(&prim),
                grid,
                gauge,
            },
        ),
        Format::Csv => {
            write_grid(cfg, &grid)?;
            match &cfg.out {
                Some(out) => write_trajectories_csv(&trajectory_path(out), &trajectories(&prim)),
                None => {
                    eprintln!("trajectories are written only with --out in CSV mode");
                    Ok(())
                }
            }
        }
    }
}

fn write_trajectories_csv(path: &Path, t: &Trajectories) -> Result<(), CliError> {
    let mut w = sink(Some(path))?;
    let n = t.alpha.len();
    let header: Vec<String> = std::iter::once("x0".to_string())
        .chain((0..n).map(|j| format!("alpha{j}")))
        .chain((0..n).map(|j| format!("beta{j}")))
        .collect();
    let io = |e: std::io::Error| CliError::Config(e.to_string());
    writeln!(w, "{}", header.join(",")).map_err(io)?;
    for (i, x) in t.x0.iter().enumerate() {
        let row: Vec<String> = std::iter::once(x.to_string())
            .chain(t.alpha.iter().map(|a| a[i].to_string()))
            .chain(t.beta.iter().map(|b| b[i].to_string()))
            .collect();
        writeln!(w, "{}", row.join(",")).map_err(io)?;
    }
    w.flush().map_err(io)
}

#[derive(Serialize)]
struct RoundTripOutput {
    roundtrip: RoundTripReport,
    construction_identity: ResidualReport,
}

fn roundtrip_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let prim = build_primitive(cfg)?;
    let grid = GridSpec::with_default_step(*prim.rect(), cfg.grid.0, cfg.grid.1)?;
    let out = RoundTripOutput {
        roundtrip: roundtrip(&prim, &grid)?,
        construction_identity: construction_identity_residual(&prim, &grid)?,
    };
    eprintln!(
        "forward residual {:.3e}, Cauchy-Riemann residual {:.3e}, construction identity {:.3e}",
        out.roundtrip.forward.max, out.roundtrip.cauchy_riemann.max, out.construction_identity.max
    );
    write_json(cfg, &out)
}

fn kernel(cfg: &RunConfig) -> Result<(), CliError> {
    let fcfg = FueterConfig::new(cfg.m, cfg.k)?;
    let nmax = cfg.nmax.unwrap_or(fcfg.kernel_degree() + 1);
    let grid = GridSpec::with_default_step(cfg.rect, cfg.grid.0, cfg.grid.1)?;
    let reports = (0..=nmax)
        .into_par_iter()
        .map(|n| kernel_check(n, cfg.k, cfg.m, &grid))
        .collect::<fueter_core::Result<Vec<KernelReport>>>()?;
    for r in &reports {
        eprintln!(
            "n = {:2}: max |Ft| = {:.3e}, |Ft(1,1)| = {:.6}{}",
            r.n,
            r.max,
            r.at_reference,
            if r.expected_zero { "  (kernel)" } else { "" }
        );
    }
    write_json(cfg, &reports)
}

fn suite(cfg: &RunConfig, reports: Vec<CriterionReport>) -> Result<(), CliError> {
    for r in &reports {
        println!("{r}");
    }
    if cfg.out.is_some() {
        write_json(cfg, &reports)?;
    }
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Acceptance(format!("failed criteria: {}", failed.join(", "))))
    }
}
