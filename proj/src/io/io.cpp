#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "dasg/error.hpp"
#include "dasg/io.hpp"

namespace dasg::io {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Splits on any run of blanks, tabs or commas.
std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  for (const std::string& t : split(line, " \t,")) {
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string where(const fs::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line + 1) + ": ";
}

long long parse_int(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DataError(context + "expected an integer, got '" + s + "'");
  return v;
}

double parse_real(const std::string& s, const std::string& context) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const double num = parse_real(s.substr(0, slash), context);
    const double den = parse_real(s.substr(slash + 1), context);
    if (den == 0.0) throw DataError(context + "zero denominator in '" + s + "'");
    return num / den;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DataError(context + "expected a number, got '" + s + "'");
  return v;
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

nlohmann::json rounded(nlohmann::json j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (j.is_structured()) {
    for (auto& v : j) v = rounded(std::move(v));
  }
  return j;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed for " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  write_text(path, rounded(j).dump(2) + "\n");
}

Dataset read_dataset(const fs::path& csv, const std::optional<fs::path>& labels_path) {
  const std::vector<std::string> lines = lines_of(csv);
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw DataError(csv.string() + ": empty dataset file");
  const std::vector<std::string> names = split(lines[first], ",");
  const auto p = names.size();
  std::vector<std::vector<int>> rows;
  for (std::size_t l = first + 1; l < lines.size(); ++l) {
    if (trim(lines[l]).empty()) continue;
    const std::vector<std::string> cells = split(lines[l], ",");
    if (cells.size() != p) {
      throw DataError(where(csv, l) + "expected " + std::to_string(p) + " fields, got " +
                      std::to_string(cells.size()));
    }
    std::vector<int> row;
    for (const std::string& c : cells) {
      const long long v = parse_int(c, where(csv, l));
      if (v < 0 || v > 1'000'000) throw DataError(where(csv, l) + "code out of range: " + c);
      row.push_back(static_cast<int>(v));
    }
    rows.push_back(std::move(row));
  }
  CodeMatrix codes(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < p; ++c)
      codes(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];

  std::vector<int> levels(p, 1);
  std::vector<std::vector<std::string>> labels;
  if (labels_path) {
    std::map<std::string, std::vector<std::string>> by_name;
    const std::vector<std::string> ll = lines_of(*labels_path);
    for (std::size_t l = 0; l < ll.size(); ++l) {
      if (skippable(ll[l])) continue;
      const std::vector<std::string> t = tokens(ll[l]);
      std::map<int, std::string> codes_to_labels;
      for (std::size_t k = 1; k < t.size(); ++k) {
        const auto eq = t[k].find('=');
        if (eq == std::string::npos) throw DataError(where(*labels_path, l) + "expected code=label");
        const long long code = parse_int(t[k].substr(0, eq), where(*labels_path, l));
        if (code < 0 || code > 1'000'000) throw DataError(where(*labels_path, l) + "bad code");
        codes_to_labels[static_cast<int>(code)] = t[k].substr(eq + 1);
      }
      const int count = static_cast<int>(codes_to_labels.size());
      if (count < 2 || codes_to_labels.rbegin()->first != count - 1) {
        throw DataError(where(*labels_path, l) + "codes must be 0..m with m >= 1");
      }
      std::vector<std::string> lab;
      for (auto& [code, label] : codes_to_labels) lab.push_back(label);
      by_name[t[0]] = std::move(lab);
    }
    for (std::size_t i = 0; i < p; ++i) {
      const auto it = by_name.find(names[i]);
      if (it == by_name.end()) throw DataError(labels_path->string() + ": no labels for " + names[i]);
      levels[i] = static_cast<int>(it->second.size()) - 1;
      labels.push_back(it->second);
    }
  } else {
    for (std::size_t i = 0; i < p && codes.rows() > 0; ++i) {
      levels[i] = std::max(1, codes.col(static_cast<Eigen::Index>(i)).maxCoeff());
    }
  }
  return Dataset(NodeScheme(levels), std::move(codes), names, labels);
}

void write_dataset(const fs::path& csv, const Dataset& data) {
  std::ostringstream out;
  for (int i = 0; i < data.p(); ++i) out << (i ? "," : "") << data.names()[static_cast<std::size_t>(i)];
  out << "\n";
  for (int k = 0; k < data.n(); ++k) {
    for (int i = 0; i < data.p(); ++i) out << (i ? "," : "") << data.rows()(k, i);
    out << "\n";
  }
  write_text(csv, out.str());
}

void write_labels(const fs::path& path, const Dataset& data) {
  std::ostringstream out;
  for (int i = 0; i < data.p(); ++i) {
    out << data.names()[static_cast<std::size_t>(i)];
    const int m = data.scheme().levels(i);
    for (int c = 0; c <= m; ++c) {
      const std::string label = data.labels().empty()
                                    ? std::to_string(c)
                                    : data.labels()[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      out << " " << c << "=" << label;
    }
    out << "\n";
  }
  write_text(path, out.str());
}

Graph read_edges(const fs::path& path, std::optional<int> p) {
  const std::vector<std::string> lines = lines_of(path);
  std::optional<int> header;
  std::vector<Graph::Edge> edges;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::string t = trim(lines[l]);
    if (t.rfind("# p=", 0) == 0) {
      header = static_cast<int>(parse_int(trim(t.substr(4)), where(path, l)));
      continue;
    }
    if (skippable(t)) continue;
    const std::vector<std::string> f = tokens(t);
    if (f.size() != 2) throw DataError(where(path, l) + "expected two node indices");
    const long long i = parse_int(f[0], where(path, l));
    const long long j = parse_int(f[1], where(path, l));
    if (i < 1 || j < 1 || i == j || i > 1'000'000 || j > 1'000'000) {
      throw DataError(where(path, l) + "invalid edge " + f[0] + " " + f[1]);
    }
    edges.emplace_back(static_cast<int>(i) - 1, static_cast<int>(j) - 1);
  }
  if (p && header && *p != *header) {
    throw DataError(path.string() + ": declares p=" + std::to_string(*header) + " but " +
                    std::to_string(*p) + " nodes are expected");
  }
  const std::optional<int> nodes = p ? p : header;
  if (!nodes) throw DataError(path.string() + ": node count unknown (no '# p=' line)");
  Graph g(*nodes);
  for (const auto& [i, j] : edges) {
    if (i >= *nodes || j >= *nodes) throw DataError(path.string() + ": edge endpoint exceeds p");
    g.add_edge(i, j);
  }
  return g;
}

void write_edges(const fs::path& path, const Graph& g) {
  std::ostringstream out;
  out << "# p=" << g.p() << "\n";
  for (const auto& [i, j] : g.edges()) out << i + 1 << "\t" << j + 1 << "\n";
  write_text(path, out.str());
}

JointPMF read_pmf(const fs::path& path) {
  const std::vector<std::string> lines = lines_of(path);
  std::size_t l = 0;
  while (l < lines.size() && skippable(lines[l])) ++l;
  if (l == lines.size()) throw DataError(path.string() + ": empty pmf file");
  const std::vector<std::string> head = tokens(lines[l]);
  const long long p = parse_int(head.at(0), where(path, l));
  if (p < 1 || static_cast<long long>(head.size()) != p + 1) {
    throw DataError(where(path, l) + "header must be 'p m_1 ... m_p'");
  }
  std::vector<int> levels;
  for (long long i = 1; i <= p; ++i) {
    const long long m = parse_int(head[static_cast<std::size_t>(i)], where(path, l));
    if (m < 1 || m > 1'000'000) throw DataError(where(path, l) + "levels must be >= 1");
    levels.push_back(static_cast<int>(m));
  }
  const NodeScheme scheme(levels);
  std::vector<double> table(support_size(scheme), 0.0);
  std::vector<bool> seen(table.size(), false);
  std::vector<int> x(static_cast<std::size_t>(p));
  for (++l; l < lines.size(); ++l) {
    if (skippable(lines[l])) continue;
    const std::vector<std::string> f = tokens(lines[l]);
    if (static_cast<long long>(f.size()) != p + 1) {
      throw DataError(where(path, l) + "expected " + std::to_string(p) + " codes and a probability");
    }
    for (long long i = 0; i < p; ++i) {
      const long long v = parse_int(f[static_cast<std::size_t>(i)], where(path, l));
      if (v < 0 || v > levels[static_cast<std::size_t>(i)]) {
        throw DataError(where(path, l) + "code out of range for node " + std::to_string(i + 1));
      }
      x[static_cast<std::size_t>(i)] = static_cast<int>(v);
    }
    std::size_t index = 0;
    std::size_t stride = 1;
    for (long long i = 0; i < p; ++i) {
      index += stride * static_cast<std::size_t>(x[static_cast<std::size_t>(i)]);
      stride *= static_cast<std::size_t>(levels[static_cast<std::size_t>(i)] + 1);
    }
    if (seen[index]) throw DataError(where(path, l) + "support point listed twice");
    seen[index] = true;
    table[index] = parse_real(f.back(), where(path, l));
  }
  return JointPMF(scheme, std::move(table));
}

Eigen::MatrixXd read_matrix_csv(const fs::path& path) {
  const std::vector<std::string> lines = lines_of(path);
  std::vector<std::vector<double>> rows;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (skippable(lines[l])) continue;
    std::vector<double> row;
    for (const std::string& t : tokens(lines[l])) row.push_back(parse_real(t, where(path, l)));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError(where(path, l) + "ragged matrix row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path.string() + ": empty matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

IsingParams read_ising(const fs::path& path) {
  const Eigen::MatrixXd beta = read_matrix_csv(path);
  if (beta.rows() != beta.cols()) throw DataError(path.string() + ": coupling matrix must be square");
  try {
    return IsingParams(beta);
  } catch (const UsageError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_matrix_csv(const fs::path& path, const Eigen::MatrixXd& m) {
  std::ostringstream out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_number(m(r, c));
    out << "\n";
  }
  write_text(path, out.str());
}

}  // namespace dasg::io
