use std::fs::File;

use num_complex::Complex64;
use serde_json::{Map, Value};
use singint_core::dcov::{dcov_stat, Centering, DcovOptions};
use singint_core::verify::{
    pole_probe, residue_spread, sweep, verify_decomposition, verify_identity, SweepOutcome,
};
use singint_core::{EvaluationPoint, KernelSpec, QuadratureConfig};

use crate::args::{
    CenteringArg, DcovArgs, DecomposeArgs, PointArgs, PoleProbeArgs, SweepArgs, Tolerances,
    VerifyArgs,
};
use crate::input::{alpha_grid, parse_grid, parse_list, parse_point, read_matrix};
use crate::report::{
    complex_fields, emit, format_f64, number, optional_number, CommandKind, Failure, RunManifest,
    EXIT_FAILURE, EXIT_OK,
};

pub const SWEEP_HEADER: [&str; 11] = [
    "d",
    "m",
    "alpha_re",
    "alpha_im",
    "numeric_re",
    "numeric_im",
    "closed_re",
    "closed_im",
    "rel_error",
    "converged",
    "skipped_reason",
];

fn config(tol: &Tolerances, manifest: &mut RunManifest) -> Result<QuadratureConfig, Failure> {
    let mut c = QuadratureConfig::default();
    if let Some(v) = tol.rel_tol {
        c.rel_tol = v;
    }
    if let Some(v) = tol.abs_tol {
        c.abs_tol = v;
    }
    if let Some(v) = tol.u_switch {
        c.u_switch = v;
    }
    if let Some(v) = tol.tail_start_zeros {
        c.tail_start_zeros = v;
    }
    if let Some(v) = tol.max_subdivisions {
        c.max_subdivisions = v;
    }
    c.validate()?;
    manifest
        .param("rel_tol", number(c.rel_tol))
        .param("abs_tol", number(c.abs_tol))
        .param("u_switch", number(c.u_switch))
        .param("tail_start_zeros", c.tail_start_zeros)
        .param("max_subdivisions", c.max_subdivisions);
    Ok(c)
}

fn point(
    args: &PointArgs,
    manifest: &mut RunManifest,
) -> Result<(KernelSpec, EvaluationPoint), Failure> {
    let spec = KernelSpec::new(args.d, args.m, Complex64::new(args.alpha_re, args.alpha_im))?;
    let coords = parse_point(args.x.as_deref(), args.d)?;
    manifest
        .param("d", args.d)
        .param("m", args.m)
        .param("alpha_re", number(args.alpha_re))
        .param("alpha_im", number(args.alpha_im))
        .param(
            "x",
            Value::Array(coords.iter().map(|&v| number(v)).collect()),
        );
    Ok((spec, EvaluationPoint::new(coords)?))
}

pub fn run_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    let mut manifest = RunManifest::new(CommandKind::Verify);
    let (spec, x) = point(&args.point, &mut manifest)?;
    let cfg = config(&args.tol, &mut manifest)?;
    manifest.param("threshold", number(args.threshold));
    let report = verify_identity(&spec, &x, &cfg)?;
    let mut body = Map::new();
    complex_fields(&mut body, "numeric", report.numeric_value);
    complex_fields(&mut body, "closed_form", report.closed_form);
    body.insert("rel_error".into(), number(report.rel_error));
    body.insert("abs_error".into(), number(report.abs_error));
    body.insert("n_evaluations".into(), report.n_evaluations.into());
    body.insert("converged".into(), report.converged.into());
    body.insert("warnings".into(), report.warnings.clone().into());
    emit(&manifest, body)?;
    if !report.converged {
        eprintln!("error: quadrature did not converge");
        return Ok(EXIT_FAILURE);
    }
    if report.rel_error.is_nan() || report.rel_error >= args.threshold {
        eprintln!(
            "error: relative error {} exceeds threshold {}",
            report.rel_error, args.threshold
        );
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}

pub fn run_sweep(args: &SweepArgs) -> Result<i32, Failure> {
    let mut manifest = RunManifest::new(CommandKind::Sweep);
    let d_list: Vec<usize> = parse_list("d-list", &args.d_list)?;
    let m_list: Vec<u32> = parse_list("m-list", &args.m_list)?;
    let re = parse_grid(&args.alpha_grid)?;
    let im: Vec<f64> = match &args.alpha_im {
        Some(text) => parse_list("alpha-im", text)?,
        None => vec![0.0],
    };
    let cfg = config(&args.tol, &mut manifest)?;
    manifest
        .param("d_list", d_list.clone())
        .param("m_list", m_list.clone())
        .param("alpha_grid", args.alpha_grid.clone())
        .param(
            "alpha_im",
            Value::Array(im.iter().map(|&v| number(v)).collect()),
        )
        .param("out", args.out.display().to_string());

    let entries = sweep(&d_list, &m_list, &alpha_grid(&re, &im), &cfg);
    let file = File::create(&args.out)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.out.display())))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record(SWEEP_HEADER).map_err(csv_failure)?;
    let (mut converged, mut skipped, mut failed) = (0usize, 0usize, 0usize);
    for entry in &entries {
        let mut row = vec![
            entry.d.to_string(),
            entry.m.to_string(),
            format_f64(entry.alpha.re),
            format_f64(entry.alpha.im),
        ];
        match &entry.outcome {
            SweepOutcome::Verified(r) => {
                let ok = r.converged && r.rel_error.is_finite();
                converged += usize::from(ok);
                failed += usize::from(!ok);
                row.extend([
                    format_f64(r.numeric_value.re),
                    format_f64(r.numeric_value.im),
                    format_f64(r.closed_form.re),
                    format_f64(r.closed_form.im),
                    format_f64(r.rel_error),
                    ok.to_string(),
                    if ok {
                        String::new()
                    } else {
                        "not converged".into()
                    },
                ]);
            }
            SweepOutcome::Skipped(reason) | SweepOutcome::Failed(reason) => {
                if matches!(entry.outcome, SweepOutcome::Skipped(_)) {
                    skipped += 1;
                } else {
                    failed += 1;
                }
                row.extend(["", "", "", "", ""].map(String::from));
                row.push("false".into());
                row.push(reason.clone());
            }
        }
        writer.write_record(&row).map_err(csv_failure)?;
    }
    writer.flush()?;

    let mut body = Map::new();
    body.insert("rows".into(), entries.len().into());
    body.insert("converged".into(), converged.into());
    body.insert("skipped".into(), skipped.into());
    body.insert("failed".into(), failed.into());
    emit(&manifest, body)?;
    if failed > 0 {
        eprintln!("error: {failed} in-strip grid point(s) did not converge");
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::Internal(e.to_string())
}

pub fn run_decompose(args: &DecomposeArgs) -> Result<i32, Failure> {
    let mut manifest = RunManifest::new(CommandKind::Decompose);
    let (spec, x) = point(&args.point, &mut manifest)?;
    let cfg = config(&args.tol, &mut manifest)?;
    manifest
        .param("radius", number(args.radius))
        .param("threshold", number(args.threshold));
    let report = verify_decomposition(&spec, &x, args.radius, &cfg)?;
    let mut body = Map::new();
    complex_fields(&mut body, "t1", report.t1);
    complex_fields(&mut body, "t2", report.t2);
    complex_fields(&mut body, "t3", report.t3);
    body.insert("radius_a".into(), number(report.radius_a));
    complex_fields(&mut body, "sum", report.sum);
    complex_fields(&mut body, "closed_form", report.closed_form);
    body.insert("rel_error".into(), number(report.rel_error));
    emit(&manifest, body)?;
    if report.rel_error.is_nan() || report.rel_error >= args.threshold {
        eprintln!(
            "error: relative error {} exceeds threshold {}",
            report.rel_error, args.threshold
        );
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}

pub fn run_pole_probe(args: &PoleProbeArgs) -> Result<i32, Failure> {
    let mut manifest = RunManifest::new(CommandKind::PoleProbe);
    let epsilons: Vec<f64> = parse_list("epsilons", &args.epsilons)?;
    if epsilons.is_empty() {
        return Err(Failure::Usage("--epsilons: need at least one value".into()));
    }
    manifest.param("d", args.d).param("m", args.m).param(
        "epsilons",
        Value::Array(epsilons.iter().map(|&v| number(v)).collect()),
    );
    let cfg = config(&args.tol, &mut manifest)?;
    let rows = pole_probe(args.d, args.m, &epsilons, &cfg)?;
    let table: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut o = Map::new();
            o.insert("epsilon".into(), number(r.epsilon));
            o.insert("alpha".into(), number(r.alpha));
            o.insert("closed_abs".into(), number(r.closed_abs));
            o.insert("numeric_abs".into(), number(r.numeric_abs));
            o.insert("scaled_closed".into(), number(r.scaled_closed()));
            Value::Object(o)
        })
        .collect();
    let mut body = Map::new();
    body.insert("rows".into(), table.into());
    body.insert("residue_spread".into(), number(residue_spread(&rows)));
    emit(&manifest, body)?;
    Ok(EXIT_OK)
}

pub fn run_dcov(args: &DcovArgs) -> Result<i32, Failure> {
    let mut manifest = RunManifest::new(CommandKind::Dcov);
    let centering = match args.centering {
        CenteringArg::Double => Centering::Double,
        CenteringArg::Unbiased => Centering::Unbiased,
    };
    manifest
        .param("x_file", args.x_file.display().to_string())
        .param("y_file", args.y_file.display().to_string())
        .param("alpha", number(args.alpha))
        .param(
            "centering",
            match centering {
                Centering::Double => "double",
                Centering::Unbiased => "unbiased",
            },
        )
        .param("permutations", args.permutations)
        .param("seed", args.seed);
    let x = read_matrix(&args.x_file)?;
    let y = read_matrix(&args.y_file)?;
    if x.rows() != y.rows() {
        return Err(Failure::Usage(format!(
            "row count mismatch: {} has {} rows, {} has {}",
            args.x_file.display(),
            x.rows(),
            args.y_file.display(),
            y.rows()
        )));
    }
    let opts = DcovOptions {
        alpha: args.alpha,
        centering,
        permutations: args.permutations,
        rng_seed: args.seed,
    };
    let r = dcov_stat(&x, &y, &opts)?;
    let mut body = Map::new();
    body.insert("n".into(), x.rows().into());
    body.insert("alpha".into(), number(args.alpha));
    body.insert("v2".into(), number(r.v2));
    body.insert("dcor".into(), number(r.dcor));
    body.insert("dvar_x".into(), number(r.dvar_x));
    body.insert("dvar_y".into(), number(r.dvar_y));
    if args.permutations >= 1 {
        body.insert("p_value".into(), optional_number(r.p_value));
    }
    body.insert(
        "warning".into(),
        r.warning().map_or(Value::Null, |w| w.into()),
    );
    emit(&manifest, body)?;
    if let Some(w) = r.warning() {
        eprintln!("warning: {w}");
    }
    Ok(EXIT_OK)
}
