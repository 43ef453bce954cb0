#include "fdms/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fdms {

namespace {

struct SchemaError : Error {
  explicit SchemaError(const std::string& msg) : Error(msg) {}
};

std::vector<std::string> split_row(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path,
                                                const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw Error("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw Error("'" + path + "' has header '" + line + "', expected '" +
                expected_header + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    rows.push_back(split_row(line));
  }
  if (rows.empty()) throw Error("'" + path + "' has no data rows");
  return rows;
}

long parse_index(const std::string& tok) {
  long k = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), k);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw Error("bad row index '" + tok + "'");
  return k;
}

void check_index(const std::vector<std::string>& row, std::size_t expected_cols,
                 long expected_k, const std::string& path) {
  if (row.size() != expected_cols)
    throw Error("'" + path + "' row " + std::to_string(expected_k) + " has " +
                std::to_string(row.size()) + " columns, expected " +
                std::to_string(expected_cols));
  if (parse_index(row[0]) != expected_k)
    throw Error("'" + path + "' rows are not numbered consecutively from 0");
}

bool overlap_agrees(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw Error("bad number '" + tok + "'");
  return v;
}

void write_curve_csv(const std::string& path, const DiscreteCurve& curve) {
  if (curve.points.empty()) throw Error("refusing to write an empty curve");
  const std::size_t n = curve.points.front().size();
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "k";
  for (std::size_t i = 0; i < n; ++i) out << ",q_" << i;
  out << "\n";
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    require_dim(curve.points[k], n, "curve point");
    out << k;
    for (double x : curve.points[k]) out << "," << format_double(x);
    out << "\n";
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

DiscreteCurve read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw Error("'" + path + "' is empty");
  const std::vector<std::string> header = split_row(line);
  if (header.size() < 2 || header[0] != "k")
    throw Error("'" + path + "' does not look like a curve file");
  for (std::size_t i = 1; i < header.size(); ++i)
    if (header[i] != "q_" + std::to_string(i - 1))
      throw Error("'" + path + "' has unexpected column '" + header[i] + "'");
  const std::size_t n = header.size() - 1;

  DiscreteCurve curve;
  long expected = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> row = split_row(line);
    check_index(row, n + 1, expected, path);
    Point q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = parse_double(row[i + 1]);
    require_finite(q, "curve file row");
    curve.points.push_back(std::move(q));
    ++expected;
  }
  if (curve.points.size() < 2)
    throw Error("'" + path + "' needs at least two points");
  return curve;
}

void write_reduced_csv(const std::string& path, const ReducedCurve& rc,
                       std::size_t shape_dim, std::size_t group_dim) {
  if (rc.ws.size() != rc.taus.size() || rc.ws.empty())
    throw Error("refusing to write a malformed reduced curve");
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "k";
  for (std::size_t i = 0; i < shape_dim; ++i) out << ",tau0_" << i;
  for (std::size_t i = 0; i < group_dim; ++i) out << ",w_" << i;
  for (std::size_t i = 0; i < shape_dim; ++i) out << ",tau1_" << i;
  out << "\n";
  for (std::size_t k = 0; k < rc.ws.size(); ++k) {
    require_dim(rc.tau(k), shape_dim, "reduced curve shape point");
    require_dim(rc.ws[k], group_dim, "reduced curve transport element");
    require_dim(rc.taus[k], shape_dim, "reduced curve shape point");
    out << k;
    for (double x : rc.tau(k)) out << "," << format_double(x);
    for (double x : rc.ws[k]) out << "," << format_double(x);
    for (double x : rc.taus[k]) out << "," << format_double(x);
    out << "\n";
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

ReducedCurve read_reduced_csv(const std::string& path, std::size_t shape_dim,
                              std::size_t group_dim) {
  std::ostringstream hdr;
  hdr << "k";
  for (std::size_t i = 0; i < shape_dim; ++i) hdr << ",tau0_" << i;
  for (std::size_t i = 0; i < group_dim; ++i) hdr << ",w_" << i;
  for (std::size_t i = 0; i < shape_dim; ++i) hdr << ",tau1_" << i;
  const auto rows = read_rows(path, hdr.str());

  const std::size_t cols = 1 + 2 * shape_dim + group_dim;
  ReducedCurve rc;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    check_index(rows[k], cols, static_cast<long>(k), path);
    ShapePoint tau0(shape_dim), tau1(shape_dim);
    GroupElem w(group_dim);
    std::size_t at = 1;
    for (std::size_t i = 0; i < shape_dim; ++i) tau0[i] = parse_double(rows[k][at++]);
    for (std::size_t i = 0; i < group_dim; ++i) w[i] = parse_double(rows[k][at++]);
    for (std::size_t i = 0; i < shape_dim; ++i) tau1[i] = parse_double(rows[k][at++]);
    require_finite(tau0, "reduced file shape point");
    require_finite(w, "reduced file transport element");
    require_finite(tau1, "reduced file shape point");
    if (k == 0) {
      rc.tau0 = tau0;
    } else {
      for (std::size_t i = 0; i < shape_dim; ++i)
        if (!overlap_agrees(tau0[i], rc.taus.back()[i]))
          throw Error("'" + path + "' row " + std::to_string(k) +
                      ": tau0 disagrees with the previous row's tau1");
    }
    rc.ws.push_back(std::move(w));
    rc.taus.push_back(std::move(tau1));
  }
  return rc;
}

void write_momentum_csv(const std::string& path, const MomentumReport& rep) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "k,j_plus,j_minus,noether_residual\n";
  for (std::size_t k = 0; k < rep.j_plus_vals.size(); ++k)
    out << k << "," << format_double(rep.j_plus_vals[k]) << ","
        << format_double(rep.j_minus_vals[k]) << ","
        << format_double(rep.noether_vals[k]) << "\n";
  if (!out) throw Error("write to '" + path + "' failed");
}

} // namespace fdms
