#include "fracext/estimate.hpp"

#include <cstdio>
#include <sstream>

namespace fracext {

std::string to_string(TraceMethod method) {
  switch (method) {
    case TraceMethod::neumann_general:
      return "neumann_general";
    case TraceMethod::incremental_s01:
      return "incremental_s01";
    case TraceMethod::incremental_s12:
      return "incremental_s12";
    case TraceMethod::bbw:
      return "bbw";
  }
  return "unknown";
}

double relative_error(const Vector& value, const Vector& reference) {
  const double denom = reference.norm();
  const double diff = (value - reference).norm();
  return denom > 0.0 ? diff / denom : diff;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string TraceEstimate::to_csv() const {
  std::ostringstream out;
  const auto& tab = extrapolant_table.table;
  const Eigen::Index dim = value.size();
  out << "# method=" << to_string(method) << ",dim=" << dim
      << ",converged=" << (converged ? "true" : "false") << "\n";
  out << "step,column";
  for (Eigen::Index i = 1; i <= dim; ++i) out << ",re(v_" << i << "),im(v_" << i << ")";
  out << ",diff\n";
  for (std::size_t j = 0; j < tab.size(); ++j) {
    for (std::size_t k = 0; k < tab[j].size(); ++k) {
      const Vector& v = tab[j][k];
      out << fmt(y_sequence.at(j)) << "," << k;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        out << "," << fmt(v(i).real()) << "," << fmt(v(i).imag());
      }
      const bool has_prev = j > 0 && k < tab[j - 1].size();
      out << "," << (has_prev ? fmt((v - tab[j - 1][k]).norm()) : std::string("")) << "\n";
    }
  }
  return out.str();
}

}  // namespace fracext
