#include "monobn/corpus.hpp"

#include <algorithm>

#include "monobn/errors.hpp"

namespace monobn {

namespace {

using Kind = ColumnRecipe::Kind;

ColumnRecipe numeric() {
  ColumnRecipe r;
  r.kind = Kind::Numeric;
  return r;
}

ColumnRecipe ordinal(std::map<std::string, int> labels, bool rebin) {
  ColumnRecipe r;
  r.kind = Kind::Ordinal;
  r.labels = std::move(labels);
  r.rebin = rebin;
  return r;
}

ColumnRecipe class_threshold(double t) {
  ColumnRecipe r;
  r.kind = Kind::ClassThreshold;
  r.threshold = t;
  return r;
}

ColumnRecipe class_labels(std::map<std::string, int> labels) {
  ColumnRecipe r;
  r.kind = Kind::ClassLabels;
  r.labels = std::move(labels);
  return r;
}

ColumnRecipe ignore() {
  ColumnRecipe r;
  r.kind = Kind::Ignore;
  return r;
}

}  // namespace

std::vector<std::string> corpus_ids() {
  return {"auto-mpg", "haberman", "pima", "bcw", "car", "car-nodoors"};
}

bool corpus_has(const std::string& id) {
  const auto ids = corpus_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::string corpus_csv_name(const std::string& id) {
  // The no-doors variant reads the same raw file.
  if (id == "car-nodoors") return "car.csv";
  return id + ".csv";
}

std::string corpus_model_name(const std::string& id, int bins) {
  return "models/" + id + "-" + std::to_string(bins) + ".qm";
}

DiscretizationSpec corpus_recipe(const std::string& id, int bins) {
  DiscretizationSpec spec;
  spec.bins = bins;
  auto& cols = spec.columns;

  if (id == "auto-mpg") {
    // Class: high mileage means mpg strictly above 28.
    cols["mpg"] = class_threshold(28.0);
    cols["cylinders"] = numeric();
    cols["disp"] = numeric();
    cols["horsepwr"] = numeric();
    cols["weight"] = numeric();
    cols["accel"] = numeric();
    cols["modelyear"] = numeric();
    // Source codes 1 = US, 2 = Europe, 3 = Japan; Japan maps to 1.
    cols["origin"] = ordinal({{"1", 0}, {"2", 0}, {"3", 1}}, false);
  } else if (id == "haberman") {
    cols["age"] = numeric();
    cols["year"] = numeric();
    cols["nodes"] = numeric();
    // Source status 1 = survived 5+ years (positive), 2 = died.
    cols["class"] = class_labels({{"1", 1}, {"2", 0}});
  } else if (id == "pima") {
    for (const char* c : {"preg", "plas", "pres", "skin", "insu", "mass", "pedi", "age"}) {
      cols[c] = numeric();
    }
    cols["class"] = class_labels({{"0", 0}, {"1", 1}});
  } else if (id == "bcw") {
    cols["id"] = ignore();
    for (const char* c : {"clumpthick", "cellsize", "cellshape", "adhesion", "epitsize",
                          "barenucl", "blandchr", "normnuc", "mitoses"}) {
      cols[c] = numeric();
    }
    // Source class 2 = benign, 4 = malignant (positive).
    cols["malignant"] = class_labels({{"2", 0}, {"4", 1}});
  } else if (id == "car" || id == "car-nodoors") {
    cols["price"] = ordinal({{"low", 0}, {"med", 1}, {"high", 2}, {"vhigh", 3}}, true);
    cols["maint"] = ordinal({{"low", 0}, {"med", 1}, {"high", 2}, {"vhigh", 3}}, true);
    cols["doors"] = id == "car-nodoors"
                        ? ignore()
                        : ordinal({{"2", 0}, {"3", 1}, {"4", 2}, {"5more", 3}}, true);
    cols["person"] = ordinal({{"2", 0}, {"4", 1}, {"more", 2}}, true);
    cols["luggage"] = ordinal({{"small", 0}, {"med", 1}, {"big", 2}}, true);
    cols["safety"] = ordinal({{"low", 0}, {"med", 1}, {"high", 2}}, true);
    cols["class"] = class_labels({{"unacc", 0}, {"acc", 1}, {"good", 1}, {"vgood", 1}});
  } else {
    throw DataError("unknown corpus dataset '" + id + "'");
  }
  return spec;
}

PreparedDataset prepare_corpus_dataset(const std::string& id, int bins,
                                       const std::filesystem::path& corpus_dir) {
  if (!corpus_has(id)) throw DataError("unknown corpus dataset '" + id + "'");
  if (bins != 2 && bins != 3 && bins != 5) {
    throw DataError("corpus bin count must be 2, 3, or 5");
  }

  PreparedDataset prepared;
  prepared.id = id;
  prepared.bins = bins;

  const DiscretizationSpec spec = corpus_recipe(id, bins);
  const RawTable raw = load_table_file((corpus_dir / corpus_csv_name(id)).string());

  std::vector<std::string> used;
  for (const auto& [name, recipe] : spec.columns) {
    if (recipe.kind != Kind::Ignore) used.push_back(name);
  }
  DropResult complete = drop_incomplete(raw, used);
  prepared.rows_kept = complete.kept;
  prepared.rows_dropped = complete.dropped;

  DiscretizeResult coded = discretize(complete.table, spec);
  prepared.data = std::move(coded.data);
  prepared.cutpoints = std::move(coded.cutpoints);

  prepared.model =
      parse_qualitative_model_file((corpus_dir / corpus_model_name(id, bins)).string());
  for (const Variable& v : prepared.model.variables) {
    const int col = prepared.data.column_index(v.name);
    if (col < 0) {
      throw DataError(id + ": prepared data has no column for model variable " + v.name);
    }
    const int card = prepared.data.schema[static_cast<size_t>(col)].cardinality;
    if (card != v.cardinality) {
      throw DataError(id + "-" + std::to_string(bins) + ": variable " + v.name +
                      " has cardinality " + std::to_string(card) + " in the data but " +
                      std::to_string(v.cardinality) + " in the model file");
    }
  }
  return prepared;
}

}  // namespace monobn
