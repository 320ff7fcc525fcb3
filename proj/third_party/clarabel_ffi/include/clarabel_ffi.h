#ifndef CLARABEL_FFI_H
#define CLARABEL_FFI_H

#ifdef __cplusplus
extern "C" {
#endif

/* Cone kinds, matching the Rust side. */
#define CLARABEL_FFI_CONE_ZERO 0
#define CLARABEL_FFI_CONE_NONNEG 1
#define CLARABEL_FFI_CONE_SOC 2
#define CLARABEL_FFI_CONE_PSD_TRIANGLE 3
#define CLARABEL_FFI_CONE_EXP 4

/* Status codes. */
#define CLARABEL_FFI_SOLVED 1
#define CLARABEL_FFI_ALMOST_SOLVED 2
#define CLARABEL_FFI_PRIMAL_INFEASIBLE (-2)
#define CLARABEL_FFI_DUAL_INFEASIBLE (-1)
#define CLARABEL_FFI_OTHER 0
#define CLARABEL_FFI_PANIC (-100)

/* Solves min c'x s.t. Ax + s = b, s in K. A is CSC (0-based). PSD cones use
 * the scaled upper-triangular column-major packing; their dim entry is the
 * matrix side. Returns a status code; x_out must hold n doubles. */
int clarabel_ffi_solve(int n, int m, const double* A_x, const int* A_i,
                       const int* A_p, int nnz, const double* b, const double* c,
                       const int* cone_kinds, const int* cone_dims, int n_cones,
                       double eps_abs, double eps_rel, int max_iters, int verbose,
                       double* x_out, double* obj_out, int* iters_out,
                       double* res_pri_out, double* res_dual_out, double* gap_out);

#ifdef __cplusplus
}
#endif

#endif /* CLARABEL_FFI_H */
