#include "conic/standard_form.hpp"

#include <cmath>

namespace isacbeam::conic {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

struct RowBuilder {
  std::vector<double> b;
  std::vector<Eigen::Triplet<double>> triplets;

  // Adds the row "s_row = scale * expr(x)": b = scale*const, A = -scale*coeffs.
  void add(const LinExpr& expr, double scale = 1.0) {
    const int row = static_cast<int>(b.size());
    b.push_back(scale * expr.constant());
    for (const auto& t : expr.terms())
      triplets.emplace_back(row, t.var, -scale * t.coeff);
  }
};

}  // namespace

StandardForm build_standard_form(const ConicProblem& problem, PsdPacking packing) {
  StandardForm out;
  out.n = problem.num_vars();
  RowBuilder rows;

  // Nonnegative rows: declared nonnegative variables, then linear
  // inequalities, in declaration order.
  int num_l = 0;
  for (int v : problem.nonneg_vars()) {
    rows.add(LinExpr::variable(v));
    ++num_l;
  }
  for (const auto& c : problem.linear_cons()) {
    rows.add(c.expr);
    ++num_l;
  }
  if (rows.b.empty() && problem.soc_cons().empty() && problem.lmi_cons().empty() &&
      problem.exp_cons().empty()) {
    // Solvers reject m = 0; a constant satisfied row keeps degenerate
    // problems (unconstrained rays) solvable.
    rows.add(LinExpr(1.0));
    ++num_l;
  }
  if (num_l > 0) {
    out.cone_kinds.push_back(ConeKind::nonneg);
    out.cone_dims.push_back(num_l);
  }

  for (const auto& c : problem.soc_cons()) {
    rows.add(c.t);
    for (const auto& e : c.u) rows.add(e);
    out.cone_kinds.push_back(ConeKind::soc);
    out.cone_dims.push_back(static_cast<int>(c.u.size()) + 1);
  }

  for (const auto& c : problem.lmi_cons()) {
    const int d = c.S.rows();
    if (packing == PsdPacking::lower_col_major) {
      for (int col = 0; col < d; ++col)
        for (int r = col; r < d; ++r)
          rows.add(c.S.at(r, col), r == col ? 1.0 : kSqrt2);
    } else {
      for (int col = 0; col < d; ++col)
        for (int r = 0; r <= col; ++r)
          rows.add(c.S.at(r, col), r == col ? 1.0 : kSqrt2);
    }
    out.cone_kinds.push_back(ConeKind::psd_triangle);
    out.cone_dims.push_back(d);
  }

  for (const auto& c : problem.exp_cons()) {
    rows.add(c.x);
    rows.add(c.y);
    rows.add(c.z);
    out.cone_kinds.push_back(ConeKind::exp);
    out.cone_dims.push_back(3);
  }

  out.m = static_cast<int>(rows.b.size());
  out.A.resize(out.m, out.n);
  out.A.setFromTriplets(rows.triplets.begin(), rows.triplets.end());
  out.A.makeCompressed();
  out.b = Eigen::Map<Eigen::VectorXd>(rows.b.data(), out.m);

  out.c = Eigen::VectorXd::Zero(out.n);
  for (const auto& t : problem.objective().terms()) out.c(t.var) = -t.coeff;
  return out;
}

}  // namespace isacbeam::conic
