use std::path::Path;

use serde_json::{json, Value};

use dmv_core::affine::{
    hyperplane_dual_mixed_volume, hyperplane_dual_mixed_volume_x, hyperplane_dual_volume,
};
use dmv_core::dualvol::{
    adjoint_polynomial, canonical_form, dual_volume, dual_volume_function, f_fan, integral_check,
    integral_estimate, z_vars, FanValue, ValueAtOrigin,
};
use dmv_core::exactnum::{format_rational, parse_rational};
use dmv_core::families::{
    amplitude_sign, associahedron_dmv, associahedron_dmv_geometric, associahedron_from_genperm,
    associahedron_to_mandelstam, contraction_limit, deletion_contraction_split, genperm_cell_dmv,
    genperm_cell_dmv_geometric, genperm_dmv_closed_form, genperm_dmv_geometric, parse_subset,
    phi3_amplitude, subsets, verify_deletion_contraction, zonotope_dmv, MandelstamTable, Zonotope,
};
use dmv_core::geometry::{cone_over, dual_cone, Polytope};
use dmv_core::io;
use dmv_core::mixed::{
    dual_mixed_volume, dual_mixed_volume_z, generate_fine_subdivision, validation_report,
    verify_cayley_identity, verify_subdivision_additivity, Lifting, MinkowskiSequence,
    MixedSubdivision,
};
use dmv_core::{Error, LinearForm, Rational, RationalVector};

use crate::args::{Cli, Command};
use crate::output::{CliError, Report};

type Outcome = Result<Report, CliError>;

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    io::parse_json(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads `path` and decodes it, attributing decode errors to the file.
fn load<T>(path: &Path, decode: impl FnOnce(&Value) -> dmv_core::Result<T>) -> Result<T, CliError> {
    let v = read_json(path)?;
    decode(&v).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// `1,0`, `[1,-1/2]` or `["1","-1/2"]`.
fn parse_vector(s: &str) -> Result<RationalVector, CliError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(|t| parse_rational(t.trim().trim_matches('"')))
        .collect::<dmv_core::Result<_>>()
        .map_err(CliError::Core)
}

fn require_dim(v: &[Rational], d: usize) -> Result<(), CliError> {
    if v.len() == d {
        Ok(())
    } else {
        Err(Error::Dimension(format!("vector of length {} in dimension {d}", v.len())).into())
    }
}

fn forms_json(forms: &[LinearForm], d: usize) -> Value {
    let vars = z_vars(d);
    Value::Array(
        forms
            .iter()
            .map(|f| io::linear_form_to_json(f, &vars))
            .collect(),
    )
}

pub fn run(cli: &Cli) -> Outcome {
    let normal = cli.global.normal;
    let seed = cli.global.seed;
    let mut r = Report::new();
    match &cli.command {
        Command::Dualvol { polytope, fan } => {
            if let Some(path) = polytope {
                let p = load(path, io::polytope_from_json)?;
                r.rational("value", &dual_volume(&p)?);
            } else if let Some(path) = fan {
                let data = load(path, io::support_data_from_json)?;
                match f_fan(&data)? {
                    FanValue::Number(v) => r.rational("value", &v),
                    FanValue::Function(f) => r.function("function", &f, normal),
                };
            }
        }
        Command::DualvolFn {
            polytope,
            canonical,
        } => {
            let p = load(polytope, io::polytope_from_json)?;
            let res = if *canonical {
                canonical_form(&p)?
            } else {
                dual_volume_function(&p)?
            };
            r.function("function", &res.function, normal);
            match &res.value_at_origin {
                ValueAtOrigin::Value(v) => r.rational("value_at_origin", v),
                ValueAtOrigin::PoleAtOrigin => r.value("value_at_origin", "pole".into()),
            };
            r.polynomial("numerator", &res.numerator, &z_vars(p.dim()));
            r.value(
                "denominator_factors",
                forms_json(&res.denominator_factors, p.dim()),
            );
            r.value("canonical_form", res.canonical_form.into());
        }
        Command::Adjoint { polytope } => {
            let p = load(polytope, io::polytope_from_json)?;
            let gens = dual_cone(&cone_over(p.vertices()))?;
            let adj = adjoint_polynomial(&gens)?;
            let numerator = dual_volume_function(&p)?.numerator;
            r.polynomial("adjoint", &adj, &z_vars(p.dim()));
            r.check("matches_numerator", adj == numerator);
        }
        Command::Mixedvol { seq, with_z } => {
            let s = load(seq, io::sequence_from_json)?;
            let f = if *with_z {
                dual_mixed_volume_z(&s)?
            } else {
                dual_mixed_volume(&s)?
            };
            r.function("function", &f, normal);
        }
        Command::VerifySubdivision { seq, sub, generate } => {
            let s = load(seq, io::sequence_from_json)?;
            let subdivision = match sub {
                Some(path) => load(path, io::subdivision_from_json)?,
                None => {
                    debug_assert!(*generate);
                    let g = generate_fine_subdivision(&s, &Lifting::Seed(seed))?;
                    let heights: Vec<Vec<String>> = g
                        .heights
                        .iter()
                        .map(|row| row.iter().map(format_rational).collect())
                        .collect();
                    r.value("heights", json!(heights));
                    r.value("subdivision", io::subdivision_to_json(&g.subdivision));
                    g.subdivision
                }
            };
            verify_subdivision(&mut r, &s, &subdivision)?;
        }
        Command::VerifyCayley { seq } => {
            let s = load(seq, io::sequence_from_json)?;
            r.check("cayley_identity", verify_cayley_identity(&s)?);
        }
        Command::Evol {
            polytope,
            seq,
            no_z,
        } => {
            if let Some(path) = polytope {
                let p = load(path, io::affine_polytope_from_json)?;
                r.function("function", &hyperplane_dual_volume(&p)?, normal);
            } else if let Some(path) = seq {
                let s = load(path, io::affine_sequence_from_json)?;
                let f = if *no_z {
                    hyperplane_dual_mixed_volume_x(&s)?
                } else {
                    hyperplane_dual_mixed_volume(&s)?
                };
                r.function("function", &f, normal);
            }
        }
        Command::Genperm { n, check } => {
            let f = genperm_dmv_closed_form(*n)?;
            r.function("function", &f, normal);
            if *check {
                r.check("matches_geometry", f.equals(&genperm_dmv_geometric(*n)?)?);
            }
        }
        Command::Associahedron { n, check } => {
            let f = associahedron_dmv(*n)?;
            r.function("function", &f, normal);
            if *check {
                r.check(
                    "matches_geometry",
                    f.equals(&associahedron_dmv_geometric(*n)?)?,
                );
                r.check(
                    "matches_permutohedron",
                    f.equals(&associahedron_from_genperm(*n)?)?,
                );
            }
        }
        Command::Amplitude { n } => {
            if *n < 3 {
                return Err(
                    Error::InvalidInput("the amplitude needs n >= 3 particles".into()).into(),
                );
            }
            let table = MandelstamTable::new(*n)?;
            r.function("amplitude", &phi3_amplitude(*n, &table)?, normal);
            r.function(
                "associahedron_image",
                &associahedron_to_mandelstam(n - 2, &table)?,
                normal,
            );
            let sign = amplitude_sign(n - 2)?;
            r.value("sign", sign.map_or(Value::Null, Value::from));
            r.check("proportional", sign.is_some());
        }
        Command::Zonotope {
            generators,
            split_dir,
        } => {
            let gens = load(generators, io::vectors_from_json)?;
            let z = Zonotope::new(gens)?;
            r.function("function", &zonotope_dmv(&z)?, normal);
            if let Some(dir) = split_dir {
                let p = z.sequence().minkowski_total()?;
                split(&mut r, &p, &parse_vector(dir)?, normal)?;
            }
        }
        Command::Split { polytope, dir } => {
            let p = load(polytope, io::polytope_from_json)?;
            split(&mut r, &p, &parse_vector(dir)?, normal)?;
        }
        Command::CheckIntegral {
            polytope,
            point,
            tolerance,
        } => {
            let p = load(polytope, io::polytope_from_json)?;
            let z = parse_vector(point)?;
            require_dim(&z, p.dim())?;
            let exact = dual_volume_function(&p)?.function.eval(&z)?;
            r.rational("exact", &exact);
            r.value("estimate", json!(integral_estimate(&p, &z)?));
            r.value("tolerance", json!(tolerance));
            r.check("within_tolerance", integral_check(&p, &z, *tolerance)?);
        }
        Command::PermutohedronCell { j } => {
            let labels: Vec<String> = load(j, |v| {
                serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
            })?;
            let n = (1..=8)
                .find(|&n| (1usize << n) - 1 == labels.len())
                .ok_or_else(|| {
                    Error::InvalidInput(format!("{} labels is not 2^n - 1", labels.len()))
                })?;
            let cell = labels
                .iter()
                .map(|s| parse_subset(s, n))
                .collect::<dmv_core::Result<Vec<u32>>>()?;
            let order: Vec<String> = subsets(n)
                .into_iter()
                .map(dmv_core::families::subset_label)
                .collect();
            r.value("n", n.into());
            r.value("subsets", json!(order));
            let f = genperm_cell_dmv(n, &cell)?;
            r.function("function", &f, normal);
            r.check(
                "matches_geometry",
                f.equals(&genperm_cell_dmv_geometric(n, &cell)?)?,
            );
        }
    }
    Ok(r)
}

fn verify_subdivision(
    r: &mut Report,
    seq: &MinkowskiSequence,
    sub: &MixedSubdivision,
) -> Result<(), CliError> {
    let report = validation_report(seq, sub)?;
    r.value("cells", sub.cells.len().into());
    r.rational("volume_sum", &report.volume_sum);
    r.rational("total_volume", &report.total_volume);
    r.check("valid", report.valid);
    if !report.valid {
        r.value(
            "overlapping",
            json!(report.overlapping.map(|(i, j)| [i, j])),
        );
        r.value("reason", json!(report.reason));
        return Ok(());
    }
    r.check("additive", verify_subdivision_additivity(seq, sub)?);
    Ok(())
}

fn split(r: &mut Report, p: &Polytope, dir: &[Rational], normal: bool) -> Result<(), CliError> {
    require_dim(dir, p.dim())?;
    let (wp, wm) = deletion_contraction_split(p, dir)?;
    r.function("w_plus", &wp, normal);
    r.function("w_minus", &wm, normal);
    r.check("deletion_contraction", verify_deletion_contraction(p, dir)?);
    match contraction_limit(&wp, dir) {
        Ok(limit) => {
            r.function("contraction_limit", &limit, normal);
        }
        Err(e) => {
            r.value("contraction_limit", Value::Null);
            r.value("contraction_limit_error", e.to_string().into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use dmv_core::exactnum::{ratio, rvec};

    #[test]
    fn vector_spellings() {
        assert_eq!(parse_vector("1,0").unwrap(), rvec(&[1, 0]));
        assert_eq!(
            parse_vector("[1, -1/2]").unwrap(),
            vec![ratio(1, 1), ratio(-1, 2)]
        );
        assert_eq!(parse_vector(r#"["3","-2"]"#).unwrap(), rvec(&[3, -2]));
        assert!(parse_vector("1,x").is_err());
    }
}
