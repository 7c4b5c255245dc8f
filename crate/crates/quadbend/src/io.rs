//! JSON and CSV interchange. Complex numbers serialize as two-element
//! [re, im] arrays at full f64 precision; vectors as three such pairs; Gram
//! matrices as 3×3 nested arrays. Rationals serialize as "p/q" strings.

use crate::bending::BendScanRow;
use crate::hermitian::{HermitianSpace, ProjPoint};
use crate::invariants::{EulerCertificate, ToledoResult};
use crate::linalg::{C64, Mat3, Vec3};
use crate::pentagon::{CubeRoot, PConditions, Pentagon};
use crate::quadrangle::QuadrangleReport;
use crate::{Error, Result, Tolerance};
use num_rational::Rational64;
use serde_json::{json, Map, Value};

fn c64_to_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn vec3_to_json(v: &Vec3) -> Value {
    Value::Array(v.0.iter().map(|z| c64_to_json(*z)).collect())
}

fn mat3_to_json(m: &Mat3) -> Value {
    Value::Array(
        (0..3)
            .map(|i| Value::Array((0..3).map(|j| c64_to_json(m.0[i][j])).collect()))
            .collect(),
    )
}

fn json_to_c64(v: &Value) -> Result<C64> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Input("complex number must be a [re, im] pair".into()))?;
    let re = arr[0]
        .as_f64()
        .ok_or_else(|| Error::Input("non-numeric real part".into()))?;
    let im = arr[1]
        .as_f64()
        .ok_or_else(|| Error::Input("non-numeric imaginary part".into()))?;
    Ok(C64::new(re, im))
}

pub fn json_to_vec3(v: &Value) -> Result<Vec3> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::Input("vector must have three [re, im] entries".into()))?;
    Ok(Vec3([
        json_to_c64(&arr[0])?,
        json_to_c64(&arr[1])?,
        json_to_c64(&arr[2])?,
    ]))
}

fn json_to_mat3(v: &Value) -> Result<Mat3> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::Input("matrix must have three rows".into()))?;
    let mut m = Mat3::zero();
    for (i, row) in arr.iter().enumerate() {
        let r = json_to_vec3(row)?;
        m.0[i] = r.0;
    }
    Ok(m)
}

fn rational_to_json(r: Rational64) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

/// Pentagon JSON: {"gram": 3×3 matrix, "points": {"p1"… "p5"}, "delta": …}.
pub fn pentagon_to_json(pent: &Pentagon) -> Value {
    let mut points = Map::new();
    for (k, p) in pent.points().iter().enumerate() {
        points.insert(format!("p{}", k + 1), vec3_to_json(&p.rep()));
    }
    json!({
        "gram": mat3_to_json(pent.space().gram()),
        "points": Value::Object(points),
        "delta": pent.delta().as_str(),
    })
}

pub fn pentagon_from_json(text: &str, tol: &Tolerance) -> Result<Pentagon> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
    let gram = json_to_mat3(
        v.get("gram")
            .ok_or_else(|| Error::Input("missing 'gram'".into()))?,
    )?;
    let space = HermitianSpace::new(gram, tol)?;
    let pts_obj = v
        .get("points")
        .and_then(|p| p.as_object())
        .ok_or_else(|| Error::Input("missing 'points'".into()))?;
    let mut points = Vec::new();
    for k in 1..=5 {
        let key = format!("p{k}");
        let p = pts_obj
            .get(&key)
            .ok_or_else(|| Error::Input(format!("missing point '{key}'")))?;
        points.push(ProjPoint::new(json_to_vec3(p)?)?);
    }
    let delta = CubeRoot::parse(
        v.get("delta")
            .and_then(|d| d.as_str())
            .ok_or_else(|| Error::Input("missing 'delta'".into()))?,
    )?;
    Pentagon::new(
        space,
        [points[0], points[1], points[2], points[3], points[4]],
        delta,
        tol,
    )
}

/// Isometry JSON: its matrix plus a caller-chosen identifier of the
/// Hermitian space it acts on.
pub fn isometry_to_json(iso: &crate::isometry::Isometry, space_id: &str) -> Value {
    json!({
        "mat": mat3_to_json(iso.mat()),
        "space": space_id,
    })
}

pub fn isometry_from_json(
    text: &str,
    space: &HermitianSpace,
    tol: &Tolerance,
) -> Result<crate::isometry::Isometry> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
    let mat = json_to_mat3(
        v.get("mat")
            .ok_or_else(|| Error::Input("missing 'mat'".into()))?,
    )?;
    crate::isometry::Isometry::new(mat, space, tol)
}

/// SurfaceCoords JSON: {"s1", "s2", "s", "sigma": [±1,±1,±1], "tau": [re,im]}.
pub fn surface_coords_to_json(c: &crate::triple::SurfaceCoords) -> Value {
    json!({
        "s1": c.s1,
        "s2": c.s2,
        "s": c.s,
        "sigma": c.sigma.as_array().to_vec(),
        "tau": c64_to_json(c.tau),
    })
}

pub fn surface_coords_from_json(text: &str, tol: &Tolerance) -> Result<crate::triple::SurfaceCoords> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
    let num = |key: &str| -> Result<f64> {
        v.get(key)
            .and_then(|x| x.as_f64())
            .ok_or_else(|| Error::Input(format!("missing numeric '{key}'")))
    };
    let sig = v
        .get("sigma")
        .and_then(|x| x.as_array())
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::Input("missing 'sigma'".into()))?;
    let sv: Vec<i8> = sig
        .iter()
        .map(|x| x.as_i64().map(|n| n as i8))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Input("bad 'sigma'".into()))?;
    let sigma = crate::triple::SignTriple::new(sv[0], sv[1], sv[2])?;
    let tau = json_to_c64(
        v.get("tau")
            .ok_or_else(|| Error::Input("missing 'tau'".into()))?,
    )?;
    crate::triple::SurfaceCoords::new(num("s1")?, num("s2")?, num("s")?, sigma, tau, tol)
}

/// Reference vectors accompanying the example pentagon: the witness on C1,
/// the middle-slice polars, the boundary probes, and the holonomy fixed
/// point with its eigenvalue.
#[derive(Clone, Debug)]
pub struct VerificationData {
    pub witness_x: ProjPoint,
    pub m: ProjPoint,
    pub m1: ProjPoint,
    pub m2: ProjPoint,
    pub m3: ProjPoint,
    pub m4: ProjPoint,
    pub probe_clockwise: ProjPoint,
    pub probe_counterclockwise: ProjPoint,
    pub z1: ProjPoint,
    pub z1_eigenvalue: C64,
}

pub fn verification_from_json(text: &str) -> Result<VerificationData> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
    let point = |key: &str| -> Result<ProjPoint> {
        ProjPoint::new(json_to_vec3(v.get(key).ok_or_else(|| {
            Error::Input(format!("missing '{key}'"))
        })?)?)
    };
    Ok(VerificationData {
        witness_x: point("witness_x")?,
        m: point("m")?,
        m1: point("m1")?,
        m2: point("m2")?,
        m3: point("m3")?,
        m4: point("m4")?,
        probe_clockwise: point("probe_clockwise")?,
        probe_counterclockwise: point("probe_counterclockwise")?,
        z1: point("z1")?,
        z1_eigenvalue: json_to_c64(
            v.get("z1_eigenvalue")
                .ok_or_else(|| Error::Input("missing 'z1_eigenvalue'".into()))?,
        )?,
    })
}

fn status_to_json(s: Option<bool>) -> Value {
    match s {
        Some(b) => Value::Bool(b),
        None => Value::Null,
    }
}

pub fn quadrangle_report_to_json(r: &QuadrangleReport) -> Value {
    json!({
        "q1": status_to_json(r.q1),
        "q2": status_to_json(r.q2),
        "q3": status_to_json(r.q3),
        "q4": status_to_json(r.q4),
        "all_ok": r.all_ok,
        "tances": r.tances.map(|t| t.to_vec()),
        "angles": r.angles.map(|a| a.to_vec()),
        "angle_sum": r.angle_sum,
        "slacks": r.slacks,
        "degenerate": r.degenerate,
    })
}

pub fn p_conditions_to_json(p: &PConditions) -> Value {
    let mut tances = Map::new();
    for ((i, j), v) in &p.pair_tances {
        tances.insert(format!("{}{}", i + 1, j + 1), json!(v));
    }
    let mut pairs_ok = Map::new();
    for ((i, j), v) in &p.p1_pairs_ok {
        pairs_ok.insert(format!("{}{}", i + 1, j + 1), json!(v));
    }
    json!({
        "pair_tances": Value::Object(tances),
        "p1_pairs_ok": Value::Object(pairs_ok),
        "p1_ok": p.p1_ok,
        "signs": p.signs.to_vec(),
        "p2_ok": p.p2_ok,
        "relation_residual": p.relation_residual,
        "p3_ok": p.p3_ok,
    })
}

pub fn toledo_to_json(t: &ToledoResult) -> Value {
    json!({
        "raw_mod2": t.raw_mod2,
        "tau": rational_to_json(t.tau),
        "chi": rational_to_json(t.chi),
        "tau_over_chi": rational_to_json(t.tau / t.chi),
    })
}

pub fn euler_to_json(c: &EulerCertificate) -> Value {
    json!({
        "e": rational_to_json(c.e),
        "segment_signs": c.segment_signs.iter().map(|s| rational_to_json(*s)).collect::<Vec<_>>(),
        "direction_tests": c.direction_tests,
        "m": vec3_to_json(&c.m.rep()),
        "m1": vec3_to_json(&c.m1.rep()),
        "m2": vec3_to_json(&c.m2.rep()),
        "m3": vec3_to_json(&c.m3.rep()),
        "m4": vec3_to_json(&c.m4.rep()),
        "z1": vec3_to_json(&c.z1.rep()),
        "z1_eigenvalue": c64_to_json(c.z1_eigenvalue),
    })
}

/// Slack columns of the scan CSV, in their fixed documented order.
pub const CSV_SLACK_COLUMNS: [&str; 26] = [
    "ta_12",
    "ta_23",
    "ta_34",
    "ta_41",
    "ta_13",
    "ta_42",
    "q1_root_slack_12",
    "q1_root_slack_23",
    "q1_root_slack_34",
    "q1_root_slack_41",
    "q1_root_slack_13",
    "q1_root_slack_42",
    "q2_eps_im",
    "q2_chi_im",
    "q2_tri123_0",
    "q2_tri123_1",
    "q2_tri123_2",
    "q2_tri134_0",
    "q2_tri134_1",
    "q2_tri134_2",
    "q3_transv_diff_c3",
    "q3_transv_diff_c1",
    "q3_sector_a",
    "q3_sector_b",
    "q4_bracket",
    "q4_bracket_r5x",
];

pub fn csv_header() -> String {
    let mut cols = vec![
        "theta".to_string(),
        "s1".into(),
        "s2".into(),
        "s".into(),
        "q1".into(),
        "q2".into(),
        "q3".into(),
        "q4".into(),
        "all".into(),
    ];
    cols.extend(CSV_SLACK_COLUMNS.iter().map(|s| s.to_string()));
    cols.push("error".into());
    cols.join(",")
}

fn status_cell(s: Option<bool>) -> &'static str {
    match s {
        Some(true) => "1",
        Some(false) => "0",
        None => "na",
    }
}

pub fn csv_row(row: &BendScanRow) -> String {
    let mut cells = vec![format!("{}", row.theta)];
    match row.coords {
        Some((s1, s2, s)) => {
            cells.push(format!("{s1}"));
            cells.push(format!("{s2}"));
            cells.push(format!("{s}"));
        }
        None => cells.extend(["".into(), "".into(), "".into()]),
    }
    match &row.report {
        Some(r) => {
            cells.push(status_cell(r.q1).into());
            cells.push(status_cell(r.q2).into());
            cells.push(status_cell(r.q3).into());
            cells.push(status_cell(r.q4).into());
            cells.push(if r.all_ok { "1" } else { "0" }.into());
            for key in CSV_SLACK_COLUMNS {
                match r.slacks.get(key) {
                    Some(v) => cells.push(format!("{v}")),
                    None => cells.push("".into()),
                }
            }
        }
        None => {
            cells.extend(vec!["na".to_string(); 5]);
            cells.extend(vec![String::new(); CSV_SLACK_COLUMNS.len()]);
        }
    }
    cells.push(row.error.clone().unwrap_or_default());
    cells.join(",")
}

/// JSON mirror of a scan row.
pub fn scan_row_to_json(row: &BendScanRow) -> Value {
    json!({
        "theta": row.theta,
        "coords": row.coords.map(|(s1, s2, s)| json!({"s1": s1, "s2": s2, "s": s})),
        "report": row.report.as_ref().map(quadrangle_report_to_json),
        "error": row.error,
    })
}
