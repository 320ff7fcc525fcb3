// C ABI shim over the Clarabel interior-point solver. The C++ side builds
// the problem in the standard conic form min c'x s.t. Ax + s = b, s in K
// and passes the cone layout as (kind, dim) pairs in row order.

use clarabel::algebra::CscMatrix;
use clarabel::solver::*;
use std::panic::catch_unwind;

pub const CONE_ZERO: i32 = 0;
pub const CONE_NONNEG: i32 = 1;
pub const CONE_SOC: i32 = 2;
pub const CONE_PSD_TRIANGLE: i32 = 3; // dim = matrix side, rows = d(d+1)/2
pub const CONE_EXP: i32 = 4;

pub const STATUS_SOLVED: i32 = 1;
pub const STATUS_ALMOST_SOLVED: i32 = 2;
pub const STATUS_PRIMAL_INFEASIBLE: i32 = -2;
pub const STATUS_DUAL_INFEASIBLE: i32 = -1;
pub const STATUS_OTHER: i32 = 0;
pub const STATUS_PANIC: i32 = -100;

#[allow(clippy::too_many_arguments)]
#[no_mangle]
pub unsafe extern "C" fn clarabel_ffi_solve(
    n: i32,
    m: i32,
    a_x: *const f64,
    a_i: *const i32,
    a_p: *const i32,
    nnz: i32,
    b: *const f64,
    c: *const f64,
    cone_kinds: *const i32,
    cone_dims: *const i32,
    n_cones: i32,
    eps_abs: f64,
    eps_rel: f64,
    max_iters: i32,
    verbose: i32,
    x_out: *mut f64,
    obj_out: *mut f64,
    iters_out: *mut i32,
    res_pri_out: *mut f64,
    res_dual_out: *mut f64,
    gap_out: *mut f64,
) -> i32 {
    let result = catch_unwind(|| {
        let n = n as usize;
        let m = m as usize;
        let nnz = nnz as usize;

        let a_x = std::slice::from_raw_parts(a_x, nnz);
        let a_i = std::slice::from_raw_parts(a_i, nnz);
        let a_p = std::slice::from_raw_parts(a_p, n + 1);
        let b = std::slice::from_raw_parts(b, m).to_vec();
        let q = std::slice::from_raw_parts(c, n).to_vec();
        let kinds = std::slice::from_raw_parts(cone_kinds, n_cones as usize);
        let dims = std::slice::from_raw_parts(cone_dims, n_cones as usize);

        let colptr: Vec<usize> = a_p.iter().map(|&v| v as usize).collect();
        let rowval: Vec<usize> = a_i.iter().map(|&v| v as usize).collect();
        let a = CscMatrix::new(m, n, colptr, rowval, a_x.to_vec());
        let p = CscMatrix::<f64>::zeros((n, n));

        let mut cones: Vec<SupportedConeT<f64>> = Vec::with_capacity(kinds.len());
        for (&kind, &dim) in kinds.iter().zip(dims.iter()) {
            let dim = dim as usize;
            match kind {
                CONE_ZERO => cones.push(ZeroConeT(dim)),
                CONE_NONNEG => cones.push(NonnegativeConeT(dim)),
                CONE_SOC => cones.push(SecondOrderConeT(dim)),
                CONE_PSD_TRIANGLE => cones.push(PSDTriangleConeT(dim)),
                CONE_EXP => cones.push(ExponentialConeT()),
                _ => return STATUS_OTHER,
            }
        }

        let settings = DefaultSettings {
            verbose: verbose != 0,
            max_iter: max_iters as u32,
            tol_gap_abs: eps_abs,
            tol_gap_rel: eps_rel,
            tol_feas: eps_abs,
            ..DefaultSettings::default()
        };

        let mut solver = match DefaultSolver::new(&p, &q, &a, &b, &cones, settings) {
            Ok(s) => s,
            Err(_) => return STATUS_OTHER,
        };
        solver.solve();

        let solution = &solver.solution;
        let info = &solver.info;
        for (i, v) in solution.x.iter().enumerate().take(n) {
            *x_out.add(i) = *v;
        }
        *obj_out = solution.obj_val;
        *iters_out = info.iterations as i32;
        *res_pri_out = info.res_primal;
        *res_dual_out = info.res_dual;
        *gap_out = info.gap_abs;

        match solution.status {
            SolverStatus::Solved => STATUS_SOLVED,
            SolverStatus::AlmostSolved => STATUS_ALMOST_SOLVED,
            SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => {
                STATUS_PRIMAL_INFEASIBLE
            }
            SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => {
                STATUS_DUAL_INFEASIBLE
            }
            _ => STATUS_OTHER,
        }
    });
    result.unwrap_or(STATUS_PANIC)
}
