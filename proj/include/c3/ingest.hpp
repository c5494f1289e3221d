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

// Input data model and loaders: alteration and copy-number matrices, the
// merged binary mutation matrix, expression z-scores, the interaction network
// and driver lists.

#ifndef C3_INGEST_HPP_
#define C3_INGEST_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "c3/catalog.hpp"
#include "c3/matrix.hpp"

namespace c3 {

// Binary gene x sample alteration calls (point mutations, indels).
struct AlterationMatrix {
  GeneCatalog genes;
  SampleCatalog samples;
  DenseMatrix<std::uint8_t> entries;
};

// Signed integer copy-number deviation from baseline, gene x sample.
struct CnvMatrix {
  GeneCatalog genes;
  SampleCatalog samples;
  DenseMatrix<int> entries;
};

// Binary gene x sample matrix plus, per gene, the ascending list of samples in
// which it is mutated.
class MutationMatrix {
 public:
  MutationMatrix() = default;
  MutationMatrix(GeneCatalog genes, SampleCatalog samples,
                 DenseMatrix<std::uint8_t> entries);

  const GeneCatalog& genes() const { return genes_; }
  const SampleCatalog& samples() const { return samples_; }
  const DenseMatrix<std::uint8_t>& entries() const { return entries_; }

  std::size_t gene_count() const { return genes_.size(); }
  std::size_t sample_count() const { return samples_.size(); }

  const std::vector<std::uint32_t>& patients(std::size_t gene) const {
    return patient_sets_.at(gene);
  }
  std::size_t mutated_count(std::size_t gene) const {
    return patient_sets_.at(gene).size();
  }

 private:
  GeneCatalog genes_;
  SampleCatalog samples_;
  DenseMatrix<std::uint8_t> entries_;
  std::vector<std::vector<std::uint32_t>> patient_sets_;
};

// Raw expression values; NaN marks a missing ("NA") cell.
struct RawExpression {
  GeneCatalog genes;
  SampleCatalog samples;
  DenseMatrix<double> values;
};

struct ExpressionMatrix {
  GeneCatalog genes;
  SampleCatalog samples;
  DenseMatrix<double> z;
  std::vector<bool> present;
  std::vector<std::size_t> missing_cells;  // NA count per gene row

  bool is_present(std::size_t gene) const { return present.at(gene); }
  std::size_t absent_count() const;
};

// Undirected simple graph over its own gene catalog.
class InteractionNetwork {
 public:
  InteractionNetwork() = default;

  // Duplicate edges collapse; self-loops and unknown endpoints are rejected.
  static InteractionNetwork from_edges(
      GeneCatalog genes,
      const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  const GeneCatalog& genes() const { return genes_; }
  std::size_t vertex_count() const { return genes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::uint32_t>& neighbors(std::size_t v) const {
    return adjacency_.at(v);
  }
  bool adjacent(std::size_t u, std::size_t v) const;

 private:
  GeneCatalog genes_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

// M(i,j) = 0 iff A(i,j) = 0 and l_cnv < C(i,j) < h_cnv; 1 otherwise.
// Both inputs must carry identical catalogs.
MutationMatrix merge_cnv(const AlterationMatrix& alterations,
                         const CnvMatrix& cnv, int l_cnv, int h_cnv);

// Reorders `cnv` onto the given catalogs. Genes missing from the CNV file get
// an all-baseline row (reported via `missing_genes`); missing samples are an
// input error.
CnvMatrix align_cnv(const CnvMatrix& cnv, const GeneCatalog& genes,
                    const SampleCatalog& samples,
                    std::vector<std::string>* missing_genes = nullptr);

// Mutation matrix straight from alterations, for runs without CNV data.
MutationMatrix mutation_from_alterations(const AlterationMatrix& alterations);

struct ZscoreOptions {
  // Divisor n-1 (sample standard deviation) when true, n otherwise.
  bool sample_sd = true;
  // Rows with more than this fraction of NA cells are marked absent.
  double max_missing_fraction = 0.5;
};

// Per-row standardization. NA cells are imputed with the row mean of the
// observed cells; zero-variance rows and rows with too many NAs are marked
// absent (their z row is all zero) and logged, never fatal.
ExpressionMatrix zscore(const RawExpression& raw, const ZscoreOptions& opts = {});

struct FilteredMutations {
  MutationMatrix matrix;
  std::vector<std::size_t> source_rows;  // row in the input matrix
  std::size_t threshold = 0;             // minimum retained mutation count
};

// Keeps genes whose mutation count is at least the nearest-rank percentile of
// all counts, dropping genes that are never mutated. Ties at the threshold
// are all kept. An empty result is an input error.
FilteredMutations filter_top_genes(const MutationMatrix& m, double percentile);

// --- loaders ---------------------------------------------------------------
//
// Matrix files are UTF-8 TSV: the first row lists sample ids (optionally
// preceded by a corner label), each further row is a gene name followed by one
// cell per sample. Blank lines are skipped. `source` names the stream in
// error messages.

AlterationMatrix read_alterations(std::istream& in, const std::string& source);
CnvMatrix read_cnv(std::istream& in, const std::string& source);
RawExpression read_expression(std::istream& in, const std::string& source);

// Whitespace-separated two-column edge list; '#' lines are comments.
InteractionNetwork read_network(std::istream& in, const std::string& source);

// One gene name per line; blank lines and '#' lines skipped.
std::set<std::string> read_driver_list(std::istream& in,
                                       const std::string& source);

AlterationMatrix load_alterations(const std::filesystem::path& path);
CnvMatrix load_cnv(const std::filesystem::path& path);
RawExpression load_expression(const std::filesystem::path& path);
InteractionNetwork load_network(const std::filesystem::path& path);
std::set<std::string> load_driver_list(const std::filesystem::path& path);

void write_alterations(std::ostream& out, const AlterationMatrix& a);
void write_cnv(std::ostream& out, const CnvMatrix& c);

}  // namespace c3

#endif  // C3_INGEST_HPP_
