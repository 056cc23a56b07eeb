#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "radial/solvers.hpp"

namespace radial {

// All floating-point cells are printed with 17 significant digits so a
// round-trip through text reproduces the exact double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

// One row per iterate record. Columns:
//   iter,z,f_x,alpha,subgrad_norm,gamma_residual,rel_accuracy,lemma34_slack,x0,x1,...
// Absent optional fields are written as empty cells.
inline void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  const std::size_t dim =
      trace.records.empty() ? 0 : trace.records.front().x.size();
  out << "iter,z,f_x,alpha,subgrad_norm,gamma_residual,rel_accuracy,lemma34_slack";
  for (std::size_t j = 0; j < dim; ++j) out << ",x" << j;
  out << "\n";
  for (const IterateRecord& rec : trace.records) {
    out << rec.iter << ',' << format_double(rec.z) << ',' << format_double(rec.f_x) << ',';
    if (rec.alpha) out << format_double(*rec.alpha);
    out << ',';
    if (rec.subgrad_norm) out << format_double(*rec.subgrad_norm);
    out << ',' << format_double(rec.gamma_residual) << ',';
    if (rec.rel_accuracy) out << format_double(*rec.rel_accuracy);
    out << ',';
    if (rec.lemma34_slack) out << format_double(*rec.lemma34_slack);
    for (std::size_t j = 0; j < dim; ++j) out << ',' << format_double(rec.x[j]);
    out << "\n";
  }
}

inline void write_trace_csv(const RunTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file: " + path);
  write_trace_csv(trace, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

}  // namespace radial
