#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "monobn/data.hpp"
#include "monobn/model.hpp"

namespace monobn {

// The benchmark corpus: five datasets with qualitative network structures.
// Each recipe names the raw CSV, the columns it uses, the class binarization,
// and the per-bin-count model file.

struct PreparedDataset {
  std::string id;
  int bins = 0;
  DiscreteDataset data;
  QualitativeModel model;
  std::map<std::string, std::vector<double>> cutpoints;
  size_t rows_kept = 0;
  size_t rows_dropped = 0;
};

std::vector<std::string> corpus_ids();
bool corpus_has(const std::string& id);

// Recipe for one corpus dataset at one bin count; exposed so the discretize
// CLI and tests can reuse it.
DiscretizationSpec corpus_recipe(const std::string& id, int bins);
std::string corpus_csv_name(const std::string& id);
std::string corpus_model_name(const std::string& id, int bins);

// Loads the raw CSV, drops incomplete rows, discretizes, and pairs the result
// with the matching model file. Throws DataError when the model's variable
// cardinalities disagree with the prepared data.
PreparedDataset prepare_corpus_dataset(const std::string& id, int bins,
                                       const std::filesystem::path& corpus_dir);

}  // namespace monobn
