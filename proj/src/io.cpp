#include "cohesion/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace cohesion::io {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& msg) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
}

struct Line {
  std::size_t number;
  std::string text;
};

// Non-empty lines with `#` comments stripped.
std::vector<Line> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    lines.push_back({number, text});
  }
  return lines;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

bool parse_number(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool is_number(const std::string& token) {
  double ignored;
  return parse_number(token, ignored);
}

double require_number(const std::string& token, const std::string& path, std::size_t line) {
  double value;
  if (!parse_number(token, value)) parse_fail(path, line, "expected a number, got '" + token + "'");
  return value;
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::pair<std::string, double>> read_mass_entries(const std::string& path) {
  std::vector<std::pair<std::string, double>> entries;
  for (const Line& line : read_lines(path)) {
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 2)
      parse_fail(path, line.number, "expected 'label mass', got " +
                                        std::to_string(tokens.size()) + " fields");
    const double value = require_number(tokens[1], path, line.number);
    if (!(value >= 0.0)) parse_fail(path, line.number, "masses must be non-negative");
    entries.emplace_back(tokens[0], value);
  }
  return entries;
}

std::vector<double> masses_for_labels(const std::vector<std::pair<std::string, double>>& entries,
                                      const std::vector<std::string>& labels,
                                      const std::string& path) {
  std::map<std::string, double> by_label;
  for (const auto& [label, value] : entries) {
    if (!by_label.emplace(label, value).second)
      throw ParseError(path + ": label '" + label + "' appears more than once");
  }
  std::vector<double> p;
  p.reserve(labels.size());
  double sum = 0.0;
  for (const std::string& label : labels) {
    const auto it = by_label.find(label);
    if (it == by_label.end())
      throw ParseError(path + ": no mass given for label '" + label + "'");
    p.push_back(it->second);
    sum += it->second;
    by_label.erase(it);
  }
  if (!by_label.empty())
    throw ParseError(path + ": mass given for unknown label '" + by_label.begin()->first + "'");
  if (std::abs(sum - 1.0) > 1e-9)
    throw ParseError(path + ": masses sum to " + format_double(sum) + ", expected 1");
  // absorb decimal representation error so the strict pmf check passes
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> maybe_masses(const std::optional<std::string>& mass_path,
                                 const std::vector<std::string>& labels) {
  if (!mass_path) return uniform_masses(labels.size());
  return masses_for_labels(read_mass_entries(*mass_path), labels, *mass_path);
}

}  // namespace

std::vector<double> read_mass_file(const std::string& path,
                                   const std::vector<std::string>& labels) {
  return masses_for_labels(read_mass_entries(path), labels, path);
}

DissimilaritySpace read_distance_csv(const std::string& path,
                                     const std::optional<std::string>& mass_path) {
  const std::vector<Line> lines = read_lines(path);
  if (lines.empty()) throw ParseError(path + ": file contains no data");

  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  rows.reserve(lines.size());
  for (const Line& line : lines) rows.emplace_back(line.number, split_csv(line.text));

  const auto& first = rows.front().second;
  // A header row carries labels only; a data row with a leading row label
  // still contains numbers.
  const bool has_header = std::none_of(first.begin(), first.end(),
                                       [](const std::string& c) { return is_number(c); });
  const std::size_t data_begin = has_header ? 1 : 0;
  const std::size_t n = rows.size() - data_begin;
  if (n == 0) parse_fail(path, rows.front().first, "matrix has a header but no rows");

  const bool has_row_labels = !rows[data_begin].second.empty() &&
                              !is_number(rows[data_begin].second.front());

  std::vector<std::string> labels;
  if (has_row_labels) {
    for (std::size_t r = data_begin; r < rows.size(); ++r) {
      if (rows[r].second.empty() || is_number(rows[r].second.front()))
        parse_fail(path, rows[r].first, "expected a row label");
      labels.push_back(rows[r].second.front());
    }
  } else if (has_header) {
    labels = first;
    if (labels.size() == n + 1) labels.erase(labels.begin());  // corner cell
    if (labels.size() != n)
      parse_fail(path, rows.front().first,
                 "header has " + std::to_string(first.size()) + " cells for " +
                     std::to_string(n) + " rows");
  } else {
    labels = default_labels(n);
  }

  Mat d(n, n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& [line_no, cells] = rows[data_begin + r];
    const std::size_t offset = has_row_labels ? 1 : 0;
    if (cells.size() != n + offset)
      parse_fail(path, line_no,
                 "expected " + std::to_string(n + offset) + " cells, got " +
                     std::to_string(cells.size()));
    for (std::size_t c = 0; c < n; ++c) d(r, c) = require_number(cells[c + offset], path, line_no);
  }

  try {
    std::vector<double> p = maybe_masses(mass_path, labels);
    return DissimilaritySpace::from_matrix(std::move(labels), std::move(d), std::move(p));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

DissimilaritySpace read_coords_csv(const std::string& path, Metric metric,
                                   const std::optional<std::string>& mass_path) {
  const std::vector<Line> lines = read_lines(path);
  if (lines.empty()) throw ParseError(path + ": file contains no data");

  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  rows.reserve(lines.size());
  for (const Line& line : lines) rows.emplace_back(line.number, split_csv(line.text));

  const auto& first = rows.front().second;
  const bool has_header = std::none_of(first.begin(), first.end(),
                                       [](const std::string& c) { return is_number(c); });

  std::ptrdiff_t label_col = -1;
  std::size_t data_begin = 0;
  if (has_header) {
    data_begin = 1;
    for (std::size_t c = 0; c < first.size(); ++c) {
      std::string lower = first[c];
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char ch) { return std::tolower(ch); });
      if (lower == "label") {
        label_col = static_cast<std::ptrdiff_t>(c);
        break;
      }
    }
  } else if (!first.empty() && !is_number(first.front())) {
    label_col = 0;  // headerless file with a leading label column
  }

  const std::size_t n = rows.size() - data_begin;
  if (n == 0) parse_fail(path, rows.front().first, "no coordinate rows");
  const std::size_t width = rows[data_begin].second.size();
  const std::size_t dims = width - (label_col >= 0 ? 1 : 0);
  if (dims == 0) parse_fail(path, rows[data_begin].first, "rows have no coordinate columns");

  std::vector<std::string> labels;
  Mat coords(n, dims, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& [line_no, cells] = rows[data_begin + r];
    if (cells.size() != width)
      parse_fail(path, line_no,
                 "expected " + std::to_string(width) + " cells, got " +
                     std::to_string(cells.size()));
    std::size_t col = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (static_cast<std::ptrdiff_t>(c) == label_col) {
        labels.push_back(cells[c]);
        continue;
      }
      coords(r, col++) = require_number(cells[c], path, line_no);
    }
  }
  if (label_col < 0) labels = default_labels(n);

  try {
    std::vector<double> p = maybe_masses(mass_path, labels);
    return DissimilaritySpace::from_coords(std::move(labels), std::move(coords), metric,
                                           std::move(p));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

TripletComparisonSpace read_triplet_file(const std::string& path,
                                         const std::optional<std::string>& mass_path) {
  const std::vector<Line> lines = read_lines(path);
  if (lines.empty()) throw ParseError(path + ": file contains no data");

  // label universe: from the mass file when given, else in order of appearance
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index_of;
  std::vector<std::pair<std::string, double>> mass_entries;
  if (mass_path) {
    mass_entries = read_mass_entries(*mass_path);
    for (const auto& [label, value] : mass_entries) {
      if (!index_of.emplace(label, labels.size()).second)
        throw ParseError(*mass_path + ": label '" + label + "' appears more than once");
      labels.push_back(label);
    }
  }
  const auto resolve = [&](const std::string& label, std::size_t line_no) {
    const auto it = index_of.find(label);
    if (it != index_of.end()) return it->second;
    if (mass_path)
      parse_fail(path, line_no, "label '" + label + "' does not appear in the mass file");
    index_of.emplace(label, labels.size());
    labels.push_back(label);
    return labels.size() - 1;
  };

  std::size_t arity = 0;
  std::vector<OutlierResponse> responses;
  struct Assigned {
    std::array<double, 3> value{-1.0, -1.0, -1.0};  // by outlier slot of the sorted triple
    std::size_t line;
  };
  std::map<std::array<std::size_t, 3>, Assigned> assigned;

  for (const Line& line : lines) {
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 3 && tokens.size() != 4)
      parse_fail(path, line.number,
                 "expected 'i j k' or 'i j k w', got " + std::to_string(tokens.size()) +
                     " fields");
    if (arity == 0) arity = tokens.size();
    if (tokens.size() != arity)
      parse_fail(path, line.number,
                 "cannot mix raw response lines and weighted assignment lines in one file");

    const std::size_t i = resolve(tokens[0], line.number);
    const std::size_t j = resolve(tokens[1], line.number);
    const std::size_t k = resolve(tokens[2], line.number);
    if (i == j || i == k || j == k)
      parse_fail(path, line.number, "triplet must name three distinct points");

    if (arity == 3) {
      responses.push_back({i, j, k, 1.0});
      continue;
    }
    const double w = require_number(tokens[3], path, line.number);
    if (!(w >= 0.0 && w <= 1.0)) parse_fail(path, line.number, "weights must lie in [0, 1]");
    std::array<std::size_t, 3> key{i, j, k};
    std::sort(key.begin(), key.end());
    auto& slot = assigned.try_emplace(key, Assigned{{-1.0, -1.0, -1.0}, line.number}).first->second;
    for (int m = 0; m < 3; ++m) {
      if (key[m] != k) continue;
      if (slot.value[m] >= 0.0)
        parse_fail(path, line.number, "duplicate assignment for this triplet and outlier");
      slot.value[m] = w;
    }
  }

  if (arity == 4) {
    // complete each triple: unspecified entries share the leftover weight
    for (const auto& [key, slot] : assigned) {
      double sum = 0.0;
      int unspecified = 0;
      for (double v : slot.value) {
        if (v < 0.0)
          ++unspecified;
        else
          sum += v;
      }
      if (sum > 1.0 + 1e-9)
        parse_fail(path, slot.line, "assigned weights of a triplet exceed 1");
      if (unspecified == 0 && std::abs(sum - 1.0) > 1e-9)
        parse_fail(path, slot.line, "the three weights of a triplet must sum to 1");
      const double rest = unspecified > 0 ? std::max(0.0, 1.0 - sum) / unspecified : 0.0;
      for (int m = 0; m < 3; ++m) {
        const double v = slot.value[m] < 0.0 ? rest : slot.value[m];
        std::array<std::size_t, 3> others;
        std::size_t o = 0;
        for (int q = 0; q < 3; ++q)
          if (q != m) others[o++] = key[static_cast<std::size_t>(q)];
        responses.push_back({others[0], others[1], key[static_cast<std::size_t>(m)], v});
      }
    }
  }

  std::vector<double> p = mass_path ? masses_for_labels(mass_entries, labels, *mass_path)
                                    : uniform_masses(labels.size());
  try {
    return aggregate_outlier_responses(std::move(labels), std::move(p), responses);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

PointLikePartition read_partition_file(const std::string& path,
                                       const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < labels.size(); ++i) index_of[labels[i]] = i;

  std::map<std::string, std::size_t> block_of_id;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<char> seen(labels.size(), 0);
  for (const Line& line : read_lines(path)) {
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 2)
      parse_fail(path, line.number, "expected 'label block_id', got " +
                                        std::to_string(tokens.size()) + " fields");
    const auto it = index_of.find(tokens[0]);
    if (it == index_of.end()) parse_fail(path, line.number, "unknown label '" + tokens[0] + "'");
    if (seen[it->second])
      parse_fail(path, line.number, "label '" + tokens[0] + "' assigned twice");
    seen[it->second] = 1;
    const auto [bit, inserted] = block_of_id.try_emplace(tokens[1], blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[bit->second].push_back(it->second);
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!seen[i])
      throw ParseError(path + ": label '" + labels[i] + "' is missing from the partition");
  for (auto& block : blocks) std::sort(block.begin(), block.end());
  return PointLikePartition{std::move(blocks)};
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels, const Mat& m) {
  for (const std::string& label : labels) out << ',' << csv_escape(label);
  out << '\n';
  for (std::size_t r = 0; r < m.rows; ++r) {
    out << csv_escape(labels[r]);
    for (std::size_t c = 0; c < m.cols; ++c) out << ',' << format_double(m(r, c));
    out << '\n';
  }
}

void write_coords_csv(std::ostream& out, const DissimilaritySpace& space) {
  if (!space.coords)
    throw std::invalid_argument("space carries no coordinates to write");
  const Mat& coords = *space.coords;
  out << "label";
  for (std::size_t c = 0; c < coords.cols; ++c) out << ",c" << (c + 1);
  out << '\n';
  for (std::size_t r = 0; r < coords.rows; ++r) {
    out << csv_escape(space.labels[r]);
    for (std::size_t c = 0; c < coords.cols; ++c) out << ',' << format_double(coords(r, c));
    out << '\n';
  }
}

void write_mass_file(std::ostream& out, const DissimilaritySpace& space) {
  for (std::size_t i = 0; i < space.size(); ++i)
    out << space.labels[i] << ' ' << format_double(space.p[i]) << '\n';
}

namespace {

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json cohesion_to_json(const CohesionMatrix& C, const std::vector<double>& p) {
  return json{{"schema_version", kSchemaVersion},
              {"labels", C.labels},
              {"values", matrix_to_json(C.values)},
              {"weighted_mean", weighted_mean_cohesion(C, p)}};
}

}  // namespace

std::string cohesion_json(const CohesionMatrix& C, const std::vector<double>& p) {
  return cohesion_to_json(C, p).dump(2);
}

std::string family_json(const PointLikeFamily& family, const std::vector<std::string>& labels) {
  json sets = json::array();
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    json members = json::array();
    for (std::size_t idx : family.sets[i]) members.push_back(labels[idx]);
    json node{{"id", i}, {"members", std::move(members)}};
    if (family.parent[i] < 0)
      node["parent"] = nullptr;
    else
      node["parent"] = family.parent[i];
    sets.push_back(std::move(node));
  }
  return json{{"schema_version", kSchemaVersion}, {"sets", std::move(sets)}}.dump(2);
}

std::string partitions_json(const std::vector<PointLikePartition>& partitions,
                            const std::vector<std::string>& labels) {
  json list = json::array();
  for (const PointLikePartition& partition : partitions) {
    json blocks = json::array();
    for (const auto& block : partition.blocks) {
      json members = json::array();
      for (std::size_t idx : block) members.push_back(labels[idx]);
      blocks.push_back(std::move(members));
    }
    list.push_back(std::move(blocks));
  }
  return json{{"schema_version", kSchemaVersion}, {"partitions", std::move(list)}}.dump(2);
}

std::string quotient_json(const QuotientSpace& q, const std::vector<std::string>& parent_labels,
                          const CohesionMatrix& quotient_cohesion) {
  json reps = json::array();
  for (std::size_t idx : q.representatives) reps.push_back(parent_labels[idx]);
  return json{{"schema_version", kSchemaVersion},
              {"representatives", std::move(reps)},
              {"masses", q.space.masses()},
              {"cohesion", cohesion_to_json(quotient_cohesion, q.space.masses())}}
      .dump(2);
}

std::string check_results_json(const std::vector<CheckResult>& results) {
  json list = json::array();
  for (const CheckResult& r : results)
    list.push_back(json{{"name", r.name},
                        {"passed", r.passed},
                        {"max_residual", r.max_residual},
                        {"details", r.details}});
  return list.dump(2);
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

void write_communities_dot(std::ostream& out, const CommunityGraph& g) {
  out << "graph cohesion {\n";
  char weight[64];
  for (const std::string& label : g.labels) out << "  \"" << dot_escape(label) << "\";\n";
  for (const CommunityEdge& e : g.edges) {
    std::snprintf(weight, sizeof(weight), "%.6g", e.weight);
    out << "  \"" << dot_escape(g.labels[e.a]) << "\" -- \"" << dot_escape(g.labels[e.b])
        << "\" [label=\"" << weight << "\", style=" << (e.strong ? "solid" : "dashed")
        << "];\n";
  }
  out << "}\n";
}

void write_communities_csv(std::ostream& out, const CommunityGraph& g) {
  out << "x,w,weight,strong\n";
  for (const CommunityEdge& e : g.edges)
    out << csv_escape(g.labels[e.a]) << ',' << csv_escape(g.labels[e.b]) << ','
        << format_double(e.weight) << ',' << (e.strong ? 1 : 0) << '\n';
}

}  // namespace cohesion::io
