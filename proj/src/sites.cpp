#include "plurirand/sites.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "plurirand/quadrature.hpp"

namespace plurirand {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

WeightedSiteSet::WeightedSiteSet(int dimension, std::vector<Cpx> coords,
                                 Eigen::VectorXd weights, Eigen::VectorXd q_values,
                                 std::string label)
    : dimension_(dimension),
      coords_(std::move(coords)),
      weights_(std::move(weights)),
      q_values_(std::move(q_values)),
      label_(std::move(label)) {
  if (dimension_ < 1) throw std::invalid_argument("site set: dimension must be >= 1");
  if (weights_.size() < 1) throw std::invalid_argument("site set: empty site set");
  if (q_values_.size() != weights_.size() ||
      coords_.size() != size() * static_cast<std::size_t>(dimension_)) {
    throw std::invalid_argument("site set: points/weights/q lengths disagree");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw std::invalid_argument("site set: weights must be positive and finite");
    }
    if (!std::isfinite(q_values_[i])) {
      throw std::invalid_argument("site set: q values must be finite");
    }
  }
}

WeightedSiteSet circle_sites(int N) {
  if (N < 1) throw std::invalid_argument("circle_sites: N must be >= 1");
  std::vector<Cpx> coords(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double theta = kTwoPi * k / N;
    coords[static_cast<std::size_t>(k)] = Cpx(std::cos(theta), std::sin(theta));
  }
  Eigen::VectorXd w = Eigen::VectorXd::Constant(N, 1.0 / N);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(N);
  return WeightedSiteSet(1, std::move(coords), std::move(w), std::move(q),
                         "circle(" + std::to_string(N) + ")");
}

WeightedSiteSet torus_sites(int m, int N) {
  if (m < 1) throw std::invalid_argument("torus_sites: m must be >= 1");
  if (N < 1) throw std::invalid_argument("torus_sites: N must be >= 1");
  double count_check = 1.0;
  for (int j = 0; j < m; ++j) count_check *= N;
  if (count_check > 5e7) {
    throw std::overflow_error("torus_sites: N^m = " +
                              std::to_string(count_check) +
                              " nodes exceed the memory budget");
  }
  const std::size_t count = static_cast<std::size_t>(count_check);

  std::vector<Cpx> circle(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    const double theta = kTwoPi * k / N;
    circle[static_cast<std::size_t>(k)] = Cpx(std::cos(theta), std::sin(theta));
  }

  std::vector<Cpx> coords(count * static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rem = i;
    for (int j = m - 1; j >= 0; --j) {
      coords[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
          circle[rem % static_cast<std::size_t>(N)];
      rem /= static_cast<std::size_t>(N);
    }
  }
  Eigen::VectorXd w = Eigen::VectorXd::Constant(
      static_cast<Eigen::Index>(count), 1.0 / count_check);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(count));
  return WeightedSiteSet(m, std::move(coords), std::move(w), std::move(q),
                         "torus(" + std::to_string(m) + "," + std::to_string(N) + ")");
}

UnboundedWeightSpec UnboundedWeightSpec::weyl_default() {
  return weyl_with_radius(3.0);
}

UnboundedWeightSpec UnboundedWeightSpec::weyl_with_radius(double radius) {
  UnboundedWeightSpec spec;
  spec.super_log_margin_b = 1.0;
  spec.moment_exponent_a = 1.0;
  spec.truncation_rule = [radius](int) { return radius; };
  return spec;
}

void UnboundedWeightSpec::validate() const {
  if (!(super_log_margin_b > 0.0)) {
    throw std::invalid_argument("UnboundedWeightSpec: b must be > 0");
  }
  if (!(moment_exponent_a > 0.0)) {
    throw std::invalid_argument("UnboundedWeightSpec: a must be > 0");
  }
  if (!truncation_rule) {
    throw std::invalid_argument("UnboundedWeightSpec: truncation rule missing");
  }
}

WeightedSiteSet weyl_sites(int degree_n, int nodes_radial, int nodes_angular,
                           const UnboundedWeightSpec& spec) {
  spec.validate();
  if (nodes_radial < 1 || nodes_angular < 1) {
    throw std::invalid_argument("weyl_sites: node counts must be >= 1");
  }
  const double radius = spec.truncation_rule(degree_n);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("weyl_sites: truncation radius R(n) must be positive");
  }

  // dm2 = r dr dtheta = (1/2) ds dtheta with s = r^2; Gauss-Legendre in s
  // makes radial polynomial moments exact at modest node counts.
  const QuadratureRule radial = gauss_legendre(nodes_radial, 0.0, radius * radius);
  const double angular_weight = kTwoPi / nodes_angular;

  const std::size_t count =
      static_cast<std::size_t>(nodes_radial) * static_cast<std::size_t>(nodes_angular);
  std::vector<Cpx> coords(count);
  Eigen::VectorXd w(static_cast<Eigen::Index>(count));
  Eigen::VectorXd q(static_cast<Eigen::Index>(count));

  std::size_t idx = 0;
  for (int i = 0; i < nodes_radial; ++i) {
    const double s = radial.nodes[static_cast<std::size_t>(i)];
    const double r = std::sqrt(s);
    const double node_weight =
        0.5 * radial.weights[static_cast<std::size_t>(i)] * angular_weight;
    for (int k = 0; k < nodes_angular; ++k) {
      const double theta = kTwoPi * k / nodes_angular;
      coords[idx] = Cpx(r * std::cos(theta), r * std::sin(theta));
      w[static_cast<Eigen::Index>(idx)] = node_weight;
      q[static_cast<Eigen::Index>(idx)] = 0.5 * s;
      ++idx;
    }
  }
  return WeightedSiteSet(1, std::move(coords), std::move(w), std::move(q),
                         "weyl(n=" + std::to_string(degree_n) + ")");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto begin = field.find_first_not_of(" \t\r");
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos
                         ? std::string{}
                         : field.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no,
                    const std::string& column) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("sites_from_file: line " + std::to_string(line_no) +
                             ": cannot parse value '" + s + "' in column " + column);
  }
}

}  // namespace

WeightedSiteSet sites_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("sites_from_file: cannot open " + path.string());
  }

  std::string header_line;
  if (!std::getline(in, header_line) || header_line.empty()) {
    throw std::runtime_error("sites_from_file: empty site set in " + path.string());
  }
  const std::vector<std::string> header = split_csv_line(header_line);

  // Columns: some arrangement of re[_j], im[_j], then weight and q.
  int m = 0;
  for (const auto& h : header) {
    if (h.rfind("re", 0) == 0) ++m;
  }
  if (m == 0) {
    throw std::runtime_error("sites_from_file: header has no 're' columns");
  }
  std::vector<int> re_col(static_cast<std::size_t>(m), -1);
  std::vector<int> im_col(static_cast<std::size_t>(m), -1);
  int weight_col = -1, q_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& h = header[c];
    if (h == "weight") {
      weight_col = static_cast<int>(c);
    } else if (h == "q") {
      q_col = static_cast<int>(c);
    } else if (h.rfind("re", 0) == 0 || h.rfind("im", 0) == 0) {
      const bool is_re = h[0] == 'r';
      int j = 1;
      const std::string tail = h.substr(2);
      if (!tail.empty()) {
        if (tail[0] != '_') {
          throw std::runtime_error("sites_from_file: bad header column '" + h + "'");
        }
        j = std::stoi(tail.substr(1));
      }
      if (j < 1 || j > m) {
        throw std::runtime_error("sites_from_file: header column '" + h +
                                 "' out of range for dimension " + std::to_string(m));
      }
      (is_re ? re_col : im_col)[static_cast<std::size_t>(j - 1)] = static_cast<int>(c);
    } else {
      throw std::runtime_error("sites_from_file: unknown header column '" + h + "'");
    }
  }
  if (weight_col < 0 || q_col < 0) {
    throw std::runtime_error("sites_from_file: header must contain 'weight' and 'q'");
  }
  for (int j = 0; j < m; ++j) {
    if (re_col[static_cast<std::size_t>(j)] < 0 || im_col[static_cast<std::size_t>(j)] < 0) {
      throw std::runtime_error("sites_from_file: missing re/im column for coordinate " +
                               std::to_string(j + 1));
    }
  }

  std::vector<Cpx> coords;
  std::vector<double> weights, qs;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("sites_from_file: line " + std::to_string(line_no) +
                               ": expected " + std::to_string(header.size()) +
                               " fields, got " + std::to_string(fields.size()));
    }
    for (int j = 0; j < m; ++j) {
      const double re = parse_double(
          fields[static_cast<std::size_t>(re_col[static_cast<std::size_t>(j)])],
          line_no, header[static_cast<std::size_t>(re_col[static_cast<std::size_t>(j)])]);
      const double im = parse_double(
          fields[static_cast<std::size_t>(im_col[static_cast<std::size_t>(j)])],
          line_no, header[static_cast<std::size_t>(im_col[static_cast<std::size_t>(j)])]);
      coords.emplace_back(re, im);
    }
    const double w = parse_double(fields[static_cast<std::size_t>(weight_col)],
                                  line_no, "weight");
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::runtime_error("sites_from_file: line " + std::to_string(line_no) +
                               ": weight must be positive, got " + format_double(w));
    }
    weights.push_back(w);
    qs.push_back(parse_double(fields[static_cast<std::size_t>(q_col)], line_no, "q"));
  }
  if (weights.empty()) {
    throw std::runtime_error("sites_from_file: empty site set in " + path.string());
  }

  Eigen::VectorXd w(static_cast<Eigen::Index>(weights.size()));
  Eigen::VectorXd q(static_cast<Eigen::Index>(qs.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    w[static_cast<Eigen::Index>(i)] = weights[i];
    q[static_cast<Eigen::Index>(i)] = qs[i];
  }
  return WeightedSiteSet(m, std::move(coords), std::move(w), std::move(q),
                         path.filename().string());
}

void write_sites_csv(const WeightedSiteSet& sites, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_sites_csv: cannot open " + path.string());
  }
  const int m = sites.dimension();
  if (m == 1) {
    out << "re,im,weight,q\n";
  } else {
    for (int j = 1; j <= m; ++j) out << "re_" << j << ",im_" << j << ",";
    out << "weight,q\n";
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto z = sites.point(i);
    for (int j = 0; j < m; ++j) {
      out << format_double(z[static_cast<std::size_t>(j)].real()) << ","
          << format_double(z[static_cast<std::size_t>(j)].imag()) << ",";
    }
    out << format_double(sites.weights()[static_cast<Eigen::Index>(i)]) << ","
        << format_double(sites.q_values()[static_cast<Eigen::Index>(i)]) << "\n";
  }
}

}  // namespace plurirand
