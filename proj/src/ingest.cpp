// Copyright 2026 The C3 Clustering Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "c3/ingest.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "c3/error.hpp"
#include "c3/percentile.hpp"

namespace c3 {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Generic labelled matrix reader; `parse_cell` converts one cell or throws a
// std::string describing the problem.
template <class T, class ParseCell>
void read_labelled_matrix(std::istream& in, const std::string& source,
                          GeneCatalog& genes, SampleCatalog& samples,
                          DenseMatrix<T>& entries, ParseCell parse_cell) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::size_t header_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank(line)) continue;
    header = split_tabs(line);
    header_line = line_no;
    break;
  }
  if (header.empty()) throw ParseError(source, line_no, "missing header row");

  std::vector<std::string> gene_names;
  std::vector<std::vector<T>> rows;
  std::size_t width = 0;  // cells per data row
  bool corner = false;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank(line)) continue;
    auto fields = split_tabs(line);
    if (rows.empty()) {
      if (fields.size() < 2) {
        throw ParseError(source, line_no, "row has no data cells");
      }
      width = fields.size() - 1;
      if (header.size() == width + 1) {
        corner = true;
      } else if (header.size() != width) {
        throw ParseError(source, line_no,
                         "row has " + std::to_string(width) +
                             " cells but the header lists " +
                             std::to_string(header.size()) + " columns");
      }
    } else if (fields.size() != width + 1) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(width) + " cells, found " +
                           std::to_string(fields.size() - 1));
    }
    std::string gene(trim(fields[0]));
    if (gene.empty()) throw ParseError(source, line_no, "empty gene name");
    std::vector<T> row(width);
    for (std::size_t j = 0; j < width; ++j) {
      try {
        row[j] = parse_cell(trim(fields[j + 1]));
      } catch (const std::string& why) {
        throw ParseError(source, line_no,
                         "column " + std::to_string(j + 2) + ": " + why);
      }
    }
    gene_names.push_back(std::move(gene));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source, line_no, "no gene rows");

  std::vector<std::string> sample_names;
  for (std::size_t j = corner ? 1 : 0; j < header.size(); ++j) {
    sample_names.emplace_back(trim(header[j]));
  }
  try {
    samples = SampleCatalog(std::move(sample_names));
  } catch (const InputError& e) {
    throw ParseError(source, header_line, e.what());
  }
  try {
    genes = GeneCatalog(std::move(gene_names));
  } catch (const InputError& e) {
    throw ParseError(source, header_line, e.what());
  }
  entries = DenseMatrix<T>(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].begin(), rows[i].end(), entries.row(i).begin());
  }
}

long parse_integer(std::string_view cell) {
  long value = 0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw std::string("not an integer: '") + std::string(cell) + "'";
  }
  return value;
}

double parse_decimal(std::string_view cell) {
  if (cell == "NA") return std::numeric_limits<double>::quiet_NaN();
  std::string text(cell);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size() || !std::isfinite(value)) {
    throw std::string("not a finite decimal: '") + text + "'";
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

template <class T>
void write_labelled_matrix(std::ostream& out, const GeneCatalog& genes,
                           const SampleCatalog& samples,
                           const DenseMatrix<T>& entries) {
  out << "gene";
  for (const auto& s : samples.names()) out << '\t' << s;
  out << '\n';
  for (std::size_t i = 0; i < genes.size(); ++i) {
    out << genes.name(i);
    for (std::size_t j = 0; j < samples.size(); ++j) {
      out << '\t' << static_cast<long>(entries(i, j));
    }
    out << '\n';
  }
}

}  // namespace

MutationMatrix::MutationMatrix(GeneCatalog genes, SampleCatalog samples,
                               DenseMatrix<std::uint8_t> entries)
    : genes_(std::move(genes)),
      samples_(std::move(samples)),
      entries_(std::move(entries)) {
  if (entries_.rows() != genes_.size() || entries_.cols() != samples_.size()) {
    throw InputError("mutation matrix dimensions do not match its catalogs");
  }
  patient_sets_.resize(genes_.size());
  for (std::size_t g = 0; g < genes_.size(); ++g) {
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      std::uint8_t v = entries_(g, j);
      if (v > 1) throw InputError("mutation matrix entry is not binary");
      if (v == 1) patient_sets_[g].push_back(static_cast<std::uint32_t>(j));
    }
  }
}

std::size_t ExpressionMatrix::absent_count() const {
  return static_cast<std::size_t>(
      std::count(present.begin(), present.end(), false));
}

InteractionNetwork InteractionNetwork::from_edges(
    GeneCatalog genes,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  InteractionNetwork net;
  net.adjacency_.resize(genes.size());
  for (auto [u, v] : edges) {
    if (u >= genes.size() || v >= genes.size()) {
      throw InputError("edge endpoint outside the gene catalog");
    }
    if (u == v) {
      throw InputError("self-loop on gene '" + genes.name(u) + "'");
    }
    net.adjacency_[u].push_back(static_cast<std::uint32_t>(v));
    net.adjacency_[v].push_back(static_cast<std::uint32_t>(u));
  }
  std::size_t directed = 0;
  for (auto& adj : net.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    directed += adj.size();
  }
  net.edge_count_ = directed / 2;
  net.genes_ = std::move(genes);
  return net;
}

bool InteractionNetwork::adjacent(std::size_t u, std::size_t v) const {
  const auto& adj = adjacency_.at(u);
  return std::binary_search(adj.begin(), adj.end(),
                            static_cast<std::uint32_t>(v));
}

MutationMatrix merge_cnv(const AlterationMatrix& alterations,
                         const CnvMatrix& cnv, int l_cnv, int h_cnv) {
  if (!(l_cnv < h_cnv)) {
    throw InputError("CNV bounds require l_cnv < h_cnv");
  }
  const auto& a = alterations.entries;
  const auto& c = cnv.entries;
  if (a.rows() != c.rows() || a.cols() != c.cols()) {
    throw InputError("alteration matrix is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " but CNV matrix is " +
                     std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
  }
  if (!(alterations.genes == cnv.genes) ||
      !(alterations.samples == cnv.samples)) {
    throw InputError("alteration and CNV catalogs differ; align them first");
  }
  DenseMatrix<std::uint8_t> merged(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      bool quiet = a(i, j) == 0 && l_cnv < c(i, j) && c(i, j) < h_cnv;
      merged(i, j) = quiet ? 0 : 1;
    }
  }
  return MutationMatrix(alterations.genes, alterations.samples,
                        std::move(merged));
}

CnvMatrix align_cnv(const CnvMatrix& cnv, const GeneCatalog& genes,
                    const SampleCatalog& samples,
                    std::vector<std::string>* missing_genes) {
  std::vector<std::size_t> column(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    auto found = cnv.samples.find(samples.name(j));
    if (!found) {
      throw InputError("sample '" + samples.name(j) +
                       "' is missing from the CNV matrix");
    }
    column[j] = *found;
  }
  CnvMatrix out{genes, samples, DenseMatrix<int>(genes.size(), samples.size())};
  for (std::size_t i = 0; i < genes.size(); ++i) {
    auto row = cnv.genes.find(genes.name(i));
    if (!row) {
      if (missing_genes) missing_genes->push_back(genes.name(i));
      continue;
    }
    for (std::size_t j = 0; j < samples.size(); ++j) {
      out.entries(i, j) = cnv.entries(*row, column[j]);
    }
  }
  return out;
}

MutationMatrix mutation_from_alterations(const AlterationMatrix& alterations) {
  return MutationMatrix(alterations.genes, alterations.samples,
                        alterations.entries);
}

ExpressionMatrix zscore(const RawExpression& raw, const ZscoreOptions& opts) {
  const std::size_t rows = raw.values.rows();
  const std::size_t cols = raw.values.cols();
  ExpressionMatrix out;
  out.genes = raw.genes;
  out.samples = raw.samples;
  out.z = DenseMatrix<double>(rows, cols, 0.0);
  out.present.assign(rows, false);
  out.missing_cells.assign(rows, 0);

  std::vector<double> buf(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto src = raw.values.row(i);
    double sum = 0.0;
    std::size_t observed = 0;
    for (double v : src) {
      if (std::isnan(v)) continue;
      sum += v;
      ++observed;
    }
    out.missing_cells[i] = cols - observed;
    if (static_cast<double>(cols - observed) >
        opts.max_missing_fraction * static_cast<double>(cols)) {
      spdlog::warn("expression: gene '{}' has {} of {} cells NA; marked absent",
                   raw.genes.name(i), cols - observed, cols);
      continue;
    }
    if (cols < 2) {
      spdlog::warn("expression: gene '{}' has fewer than 2 samples; marked "
                   "absent",
                   raw.genes.name(i));
      continue;
    }
    const double mean = sum / static_cast<double>(observed);
    for (std::size_t j = 0; j < cols; ++j) {
      buf[j] = std::isnan(src[j]) ? mean : src[j];
    }
    double ss = 0.0;
    for (double v : buf) ss += (v - mean) * (v - mean);
    const double divisor =
        opts.sample_sd ? static_cast<double>(cols - 1) : static_cast<double>(cols);
    const double sd = std::sqrt(ss / divisor);
    if (!(sd > 0.0)) {
      spdlog::warn("expression: gene '{}' has zero variance; marked absent",
                   raw.genes.name(i));
      continue;
    }
    auto dst = out.z.row(i);
    for (std::size_t j = 0; j < cols; ++j) dst[j] = (buf[j] - mean) / sd;
    out.present[i] = true;
  }
  return out;
}

FilteredMutations filter_top_genes(const MutationMatrix& m, double percentile) {
  check_percentile(percentile, "top-gene percentile");
  if (m.gene_count() == 0) throw InputError("mutation matrix has no genes");
  std::vector<double> counts(m.gene_count());
  for (std::size_t g = 0; g < m.gene_count(); ++g) {
    counts[g] = static_cast<double>(m.mutated_count(g));
  }
  auto threshold =
      static_cast<std::size_t>(nearest_rank_percentile(counts, percentile));
  threshold = std::max<std::size_t>(threshold, 1);

  FilteredMutations out;
  out.threshold = threshold;
  std::vector<std::string> names;
  for (std::size_t g = 0; g < m.gene_count(); ++g) {
    if (m.mutated_count(g) >= threshold) {
      out.source_rows.push_back(g);
      names.push_back(m.genes().name(g));
    }
  }
  if (out.source_rows.empty()) {
    throw InputError("no gene passes the mutation-frequency filter");
  }
  DenseMatrix<std::uint8_t> entries(out.source_rows.size(), m.sample_count());
  for (std::size_t i = 0; i < out.source_rows.size(); ++i) {
    auto src = m.entries().row(out.source_rows[i]);
    std::copy(src.begin(), src.end(), entries.row(i).begin());
  }
  out.matrix = MutationMatrix(GeneCatalog(std::move(names)), m.samples(),
                              std::move(entries));
  return out;
}

AlterationMatrix read_alterations(std::istream& in, const std::string& source) {
  AlterationMatrix a;
  read_labelled_matrix<std::uint8_t>(
      in, source, a.genes, a.samples, a.entries,
      [](std::string_view cell) -> std::uint8_t {
        long v = parse_integer(cell);
        if (v != 0 && v != 1) {
          throw std::string("alteration cell must be 0 or 1, got ") +
              std::to_string(v);
        }
        return static_cast<std::uint8_t>(v);
      });
  return a;
}

CnvMatrix read_cnv(std::istream& in, const std::string& source) {
  CnvMatrix c;
  read_labelled_matrix<int>(in, source, c.genes, c.samples, c.entries,
                            [](std::string_view cell) -> int {
                              long v = parse_integer(cell);
                              if (v < std::numeric_limits<int>::min() ||
                                  v > std::numeric_limits<int>::max()) {
                                throw std::string("CNV value out of range");
                              }
                              return static_cast<int>(v);
                            });
  return c;
}

RawExpression read_expression(std::istream& in, const std::string& source) {
  RawExpression r;
  read_labelled_matrix<double>(in, source, r.genes, r.samples, r.values,
                               parse_decimal);
  return r;
}

InteractionNetwork read_network(std::istream& in, const std::string& source) {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::istringstream fields{std::string(view)};
    std::string u, v, extra;
    fields >> u >> v;
    if (u.empty() || v.empty()) {
      throw ParseError(source, line_no, "expected two gene names");
    }
    if (fields >> extra) {
      throw ParseError(source, line_no, "more than two columns");
    }
    if (u == v) throw ParseError(source, line_no, "self-loop on '" + u + "'");
    std::size_t a = intern(u);
    std::size_t b = intern(v);
    edges.emplace_back(a, b);
  }
  return InteractionNetwork::from_edges(GeneCatalog(std::move(names)), edges);
}

std::set<std::string> read_driver_list(std::istream& in,
                                       const std::string& source) {
  std::set<std::string> drivers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (view.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(source, line_no, "expected a single gene name");
    }
    drivers.emplace(view);
  }
  return drivers;
}

AlterationMatrix load_alterations(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_alterations(in, path.string());
}

CnvMatrix load_cnv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_cnv(in, path.string());
}

RawExpression load_expression(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_expression(in, path.string());
}

InteractionNetwork load_network(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_network(in, path.string());
}

std::set<std::string> load_driver_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_driver_list(in, path.string());
}

void write_alterations(std::ostream& out, const AlterationMatrix& a) {
  write_labelled_matrix(out, a.genes, a.samples, a.entries);
}

void write_cnv(std::ostream& out, const CnvMatrix& c) {
  write_labelled_matrix(out, c.genes, c.samples, c.entries);
}

}  // namespace c3
