//! C ABI over the decision engine: flat-array inputs, status codes and an
//! opaque report handle. The generated header lives at `include/vho.h`.

use std::slice;

use vho_core::ahp::{ahp_weights, PairwiseComparisonMatrix};
use vho_core::decision::{
    rank, AttributeSpec, DecisionMatrix, Direction, Method, ValueModel, WeightVector,
};
use vho_core::evaluator::{
    evaluate, CriticalityReport, EvaluationMatrix, NormalizationMode, ParameterSpec,
};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VhoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputationFailed = 3,
}

/// Ranking methods, mirrored as plain integers for C callers.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VhoMethod {
    Topsis = 0,
    Gra = 1,
    Dia = 2,
}

impl From<VhoMethod> for Method {
    fn from(m: VhoMethod) -> Method {
        match m {
            VhoMethod::Topsis => Method::Topsis,
            VhoMethod::Gra => Method::Gra,
            VhoMethod::Dia => Method::Dia,
        }
    }
}

/// Opaque criticality report handle; release with `vho_report_free`.
pub struct VhoReport {
    inner: CriticalityReport,
}

const DIRECTION_BENEFIT: u8 = 0;
const DIRECTION_COST: u8 = 1;

fn direction_from(raw: u8) -> Option<Direction> {
    match raw {
        DIRECTION_BENEFIT => Some(Direction::Benefit),
        DIRECTION_COST => Some(Direction::Cost),
        _ => None,
    }
}

unsafe fn grid_from(values: *const f64, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    slice::from_raw_parts(values, rows * cols)
        .chunks(cols)
        .map(|c| c.to_vec())
        .collect()
}

/// Rank `n_alt` alternatives over `n_attr` attributes.
///
/// `values` is row-major `n_alt * n_attr`; `directions` holds one byte per
/// attribute (0 = benefit, 1 = cost); `weights` must sum to 1. On success
/// `out_scores` receives one score per alternative and `out_order` the
/// alternative indices from best to worst.
///
/// # Safety
/// All pointers must be non-null and sized as described above.
#[no_mangle]
pub unsafe extern "C" fn vho_rank(
    method: VhoMethod,
    n_alt: usize,
    n_attr: usize,
    values: *const f64,
    directions: *const u8,
    weights: *const f64,
    out_scores: *mut f64,
    out_order: *mut usize,
) -> VhoStatus {
    if values.is_null() || directions.is_null() || weights.is_null()
        || out_scores.is_null() || out_order.is_null()
    {
        return VhoStatus::NullPointer;
    }
    if n_alt == 0 || n_attr == 0 {
        return VhoStatus::InvalidArgument;
    }
    let dirs = slice::from_raw_parts(directions, n_attr);
    let mut attributes = Vec::with_capacity(n_attr);
    for (j, &d) in dirs.iter().enumerate() {
        let Some(direction) = direction_from(d) else {
            return VhoStatus::InvalidArgument;
        };
        attributes.push(AttributeSpec {
            name: format!("attr{j}"),
            units: String::new(),
            direction,
            value_model: ValueModel::Fixed(0.0),
        });
    }
    let matrix = match DecisionMatrix::new(
        (0..n_alt).map(|i| format!("alt{i}")).collect(),
        attributes,
        grid_from(values, n_alt, n_attr),
    ) {
        Ok(m) => m,
        Err(_) => return VhoStatus::InvalidArgument,
    };
    let w = match WeightVector::new(slice::from_raw_parts(weights, n_attr).to_vec()) {
        Ok(w) => w,
        Err(_) => return VhoStatus::InvalidArgument,
    };
    match rank(method.into(), &matrix, &w) {
        Ok(r) => {
            slice::from_raw_parts_mut(out_scores, n_alt).copy_from_slice(&r.scores);
            slice::from_raw_parts_mut(out_order, n_alt).copy_from_slice(&r.order);
            VhoStatus::Ok
        }
        Err(_) => VhoStatus::ComputationFailed,
    }
}

/// Derive weights from a `k x k` row-major reciprocal judgment matrix.
///
/// # Safety
/// `judgments` must point to `k * k` doubles and `out_weights` to `k`.
#[no_mangle]
pub unsafe extern "C" fn vho_ahp_weights(
    k: usize,
    judgments: *const f64,
    out_weights: *mut f64,
) -> VhoStatus {
    if judgments.is_null() || out_weights.is_null() {
        return VhoStatus::NullPointer;
    }
    if k == 0 {
        return VhoStatus::InvalidArgument;
    }
    let pcm = PairwiseComparisonMatrix {
        labels: (0..k).map(|i| format!("c{i}")).collect(),
        judgments: grid_from(judgments, k, k),
    };
    match ahp_weights(&pcm) {
        Ok(w) => {
            slice::from_raw_parts_mut(out_weights, k).copy_from_slice(w.as_slice());
            VhoStatus::Ok
        }
        Err(_) => VhoStatus::InvalidArgument,
    }
}

/// Run the criticality pipeline over a measured `n_alg x n_param` grid.
///
/// `directions` holds one byte per parameter; `judgments` is the row-major
/// `n_param x n_param` reciprocal matrix weighting the parameters;
/// `strict_cost_reciprocal` selects the reciprocal cost normalization
/// (nonzero) over the max-ratio default. On success `*out_report` owns a
/// report handle that must be released with `vho_report_free`.
///
/// # Safety
/// All pointers must be non-null and sized as described above.
#[no_mangle]
pub unsafe extern "C" fn vho_evaluate(
    n_alg: usize,
    n_param: usize,
    values: *const f64,
    directions: *const u8,
    judgments: *const f64,
    strict_cost_reciprocal: u8,
    out_report: *mut *mut VhoReport,
) -> VhoStatus {
    if values.is_null() || directions.is_null() || judgments.is_null() || out_report.is_null() {
        return VhoStatus::NullPointer;
    }
    if n_alg == 0 || n_param == 0 {
        return VhoStatus::InvalidArgument;
    }
    let dirs = slice::from_raw_parts(directions, n_param);
    let mut parameters = Vec::with_capacity(n_param);
    for (j, &d) in dirs.iter().enumerate() {
        let Some(direction) = direction_from(d) else {
            return VhoStatus::InvalidArgument;
        };
        parameters.push(ParameterSpec {
            name: format!("p{j}"),
            direction,
        });
    }
    let labels: Vec<String> = parameters.iter().map(|p| p.name.clone()).collect();
    let em = match EvaluationMatrix::new(
        (0..n_alg).map(|i| format!("alg{i}")).collect(),
        parameters,
        grid_from(values, n_alg, n_param),
    ) {
        Ok(m) => m,
        Err(_) => return VhoStatus::InvalidArgument,
    };
    let pcm = PairwiseComparisonMatrix {
        labels,
        judgments: grid_from(judgments, n_param, n_param),
    };
    let mode = if strict_cost_reciprocal != 0 {
        NormalizationMode::StrictCostReciprocal
    } else {
        NormalizationMode::MaxRatio
    };
    match evaluate(&em, &pcm, mode) {
        Ok(inner) => {
            *out_report = Box::into_raw(Box::new(VhoReport { inner }));
            VhoStatus::Ok
        }
        Err(_) => VhoStatus::ComputationFailed,
    }
}

/// Number of evaluated algorithms in the report.
///
/// # Safety
/// `report` must be a live handle from `vho_evaluate`.
#[no_mangle]
pub unsafe extern "C" fn vho_report_len(report: *const VhoReport) -> usize {
    if report.is_null() {
        return 0;
    }
    (*report).inner.evaluation.algorithms.len()
}

/// Copy the per-algorithm criticality indices into `out` (length from
/// `vho_report_len`).
///
/// # Safety
/// `report` must be live and `out` sized to `vho_report_len`.
#[no_mangle]
pub unsafe extern "C" fn vho_report_indices(
    report: *const VhoReport,
    out: *mut f64,
) -> VhoStatus {
    if report.is_null() || out.is_null() {
        return VhoStatus::NullPointer;
    }
    let indices = &(*report).inner.indices;
    slice::from_raw_parts_mut(out, indices.len()).copy_from_slice(indices);
    VhoStatus::Ok
}

/// Copy the row-major criticality levels into `out`
/// (`n_alg * n_param` bytes).
///
/// # Safety
/// `report` must be live and `out` sized to the full grid.
#[no_mangle]
pub unsafe extern "C" fn vho_report_criticality(
    report: *const VhoReport,
    out: *mut u8,
) -> VhoStatus {
    if report.is_null() || out.is_null() {
        return VhoStatus::NullPointer;
    }
    let grid = &(*report).inner.criticality;
    let flat: Vec<u8> = grid.iter().flatten().copied().collect();
    slice::from_raw_parts_mut(out, flat.len()).copy_from_slice(&flat);
    VhoStatus::Ok
}

/// The scale divisor used by the index (maximum observed level).
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vho_report_scale_divisor(report: *const VhoReport) -> u8 {
    if report.is_null() {
        return 0;
    }
    (*report).inner.scale_divisor
}

/// Per-algorithm recommendation flags (1 = in the argmax set).
///
/// # Safety
/// `report` must be live and `out` sized to `vho_report_len`.
#[no_mangle]
pub unsafe extern "C" fn vho_report_recommended(
    report: *const VhoReport,
    out: *mut u8,
) -> VhoStatus {
    if report.is_null() || out.is_null() {
        return VhoStatus::NullPointer;
    }
    let inner = &(*report).inner;
    for (i, alg) in inner.evaluation.algorithms.iter().enumerate() {
        *out.add(i) = u8::from(inner.recommended.contains(alg));
    }
    VhoStatus::Ok
}

/// Release a report handle. Null is a no-op.
///
/// # Safety
/// `report` must come from `vho_evaluate` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn vho_report_free(report: *mut VhoReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
