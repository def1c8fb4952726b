#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monobn/model.hpp"

namespace monobn {

// ---------------------------------------------------------------------------
// Raw delimited tables
// ---------------------------------------------------------------------------

struct RawTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
};

struct TableFormat {
  char delimiter = ',';
  bool has_header = true;
  std::string missing_marker = "?";
};

RawTable load_table(std::istream& in, const TableFormat& format = {});
RawTable load_table_file(const std::string& path, const TableFormat& format = {});

struct DropResult {
  RawTable table;
  size_t kept = 0;
  size_t dropped = 0;
};

// Removes rows carrying the missing marker in any used column. An empty
// used_columns list means all columns are considered used.
DropResult drop_incomplete(const RawTable& table, const std::vector<std::string>& used_columns = {},
                           const std::string& missing_marker = "?");

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

// Equal-frequency cut points: sorted values are split into b groups of size
// floor(n/b) or ceil(n/b); each cut is the midpoint between the last value of
// one group and the first of the next. A boundary falling inside a run of
// ties shifts to the nearest position where adjacent sorted values differ
// (ties between left and right shifts resolve to the left). Returns fewer
// than b-1 cuts when there are not enough distinct values.
std::vector<double> equal_frequency_cutpoints(std::vector<double> values, int bins);

// Bin index of a value under ascending cut points.
int bin_of(double value, const std::vector<double>& cuts);

// Per-column preparation recipe.
struct ColumnRecipe {
  enum class Kind { Numeric, Ordinal, ClassThreshold, ClassLabels, Ignore };
  Kind kind = Kind::Numeric;
  // Ordinal / ClassLabels: source label -> code.
  std::map<std::string, int> labels;
  // Ordinal: discretize the codes again with equal-frequency bins.
  bool rebin = false;
  // ClassThreshold: positive iff value > threshold.
  double threshold = 0.0;
};

struct DiscretizationSpec {
  int bins = 2;
  std::map<std::string, ColumnRecipe> columns;  // keyed by source column name
};

struct ColumnSpec {
  std::string name;
  int cardinality = 0;
};

struct DiscreteDataset {
  std::vector<ColumnSpec> schema;
  int class_col = -1;
  std::vector<std::vector<int>> rows;

  size_t size() const { return rows.size(); }
  int column_index(const std::string& name) const;
};

struct DiscretizeResult {
  DiscreteDataset data;
  std::map<std::string, std::vector<double>> cutpoints;  // audit sidecar
};

// Maps every non-ignored column of the table to integer state codes. Numeric
// columns get equal-frequency bins computed over the whole table; the class
// column is binarized by its recipe. Row count is preserved.
DiscretizeResult discretize(const RawTable& table, const DiscretizationSpec& spec);

// Coded CSV whose header matches the model's variables; every cell must be an
// integer below its variable's cardinality.
DiscreteDataset load_discrete_csv(const std::string& path, const QualitativeModel& model);
void write_discrete_csv(const DiscreteDataset& data, std::ostream& out);

// ---------------------------------------------------------------------------
// Splits
// ---------------------------------------------------------------------------

struct SplitSpec {
  double test_fraction = 1.0 / 3.0;
  uint64_t seed = 0;
};

struct Split {
  DiscreteDataset train_pool;
  DiscreteDataset test;
};

// Stratified by class: per-class test counts follow round(count * fraction)
// with largest-remainder correction so the total matches round(n * fraction).
Split stratified_split(const DiscreteDataset& data, const SplitSpec& spec);

// Uniform sample of m rows without replacement, deterministic per seed.
DiscreteDataset sample_training_set(const DiscreteDataset& pool, size_t m, uint64_t seed);

// ---------------------------------------------------------------------------
// Model DSL
// ---------------------------------------------------------------------------

// Line-oriented grammar, '#' comments:
//   network <name>
//   var <name> <cardinality>
//   class <name>
//   edge <parent> -> <child> (q+|q-|none)
QualitativeModel parse_qualitative_model(std::istream& in);
QualitativeModel parse_qualitative_model_file(const std::string& path);

}  // namespace monobn
