#include "aerogrid/lp_writer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "aerogrid/error.hpp"

namespace aerogrid {

namespace {

std::string num(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_terms(std::ostream& out, const Row& row, const ModelIR& m) {
  for (std::size_t i = 0; i < row.cols.size(); ++i) {
    const double c = row.coefs[i];
    out << (c < 0 ? " - " : (i == 0 ? " " : " + ")) << num(std::abs(c)) << ' '
        << m.col_names[row.cols[i]];
  }
}

}  // namespace

void write_lp(std::ostream& out, const ModelIR& m) {
  out << "\\ " << m.num_cols() << " columns, " << m.num_rows() << " rows\n";
  out << "Minimize\n obj:";
  bool any = false;
  for (int j = 0; j < m.num_cols(); ++j) {
    const double c = m.objective[j];
    if (c == 0.0) continue;
    out << (c < 0 ? " - " : (any ? " + " : " ")) << num(std::abs(c)) << ' ' << m.col_names[j];
    any = true;
  }
  if (!any) out << " 0 " << (m.num_cols() ? m.col_names[0] : "x");
  out << "\nSubject To\n";
  for (const Row& row : m.rows) {
    out << ' ' << row.name << ':';
    write_terms(out, row, m);
    switch (row.sense) {
      case RowSense::LE: out << " <= "; break;
      case RowSense::EQ: out << " = "; break;
      case RowSense::GE: out << " >= "; break;
    }
    out << num(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < m.num_cols(); ++j) {
    const double lo = m.col_lower[j];
    const double hi = m.col_upper[j];
    if (m.integer[j] && lo == 0.0 && hi == 1.0) continue;  // listed under Binaries
    if (lo == hi) {
      out << ' ' << m.col_names[j] << " = " << num(lo) << '\n';
    } else {
      out << ' ' << (lo == -kInf ? "-inf" : num(lo)) << " <= " << m.col_names[j] << " <= "
          << (hi == kInf ? "+inf" : num(hi)) << '\n';
    }
  }
  bool has_binary = false;
  for (int j = 0; j < m.num_cols(); ++j)
    if (m.integer[j] && m.col_lower[j] == 0.0 && m.col_upper[j] == 1.0) has_binary = true;
  if (has_binary) {
    out << "Binaries\n";
    for (int j = 0; j < m.num_cols(); ++j)
      if (m.integer[j] && m.col_lower[j] == 0.0 && m.col_upper[j] == 1.0)
        out << ' ' << m.col_names[j] << '\n';
  }
  bool has_general = false;
  for (int j = 0; j < m.num_cols(); ++j)
    if (m.integer[j] && !(m.col_lower[j] == 0.0 && m.col_upper[j] == 1.0)) has_general = true;
  if (has_general) {
    out << "Generals\n";
    for (int j = 0; j < m.num_cols(); ++j)
      if (m.integer[j] && !(m.col_lower[j] == 0.0 && m.col_upper[j] == 1.0))
        out << ' ' << m.col_names[j] << '\n';
  }
  out << "End\n";
}

void write_lp_file(const std::string& path, const ModelIR& model) {
  std::ofstream out(path);
  if (!out) fail("cannot open '" + path + "' for writing");
  write_lp(out, model);
}

}  // namespace aerogrid
