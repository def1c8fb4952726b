#include "monobn/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "monobn/errors.hpp"
#include "monobn/rng.hpp"

namespace monobn {

int RawTable::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int DiscreteDataset::column_index(const std::string& name) const {
  for (size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delimiter)) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == delimiter) cells.push_back("");
  return cells;
}

double parse_number(const std::string& cell, size_t row, const std::string& column) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') {
    throw DataError("row " + std::to_string(row + 1) + ", column " + column +
                    ": not a number: '" + cell + "'");
  }
  return v;
}

}  // namespace

RawTable load_table(std::istream& in, const TableFormat& format) {
  RawTable table;
  std::string line;
  size_t lineno = 0;
  size_t width = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_line(line, format.delimiter);
    if (format.has_header && !saw_header) {
      table.columns = cells;
      width = cells.size();
      saw_header = true;
      continue;
    }
    if (width == 0) {
      width = cells.size();
      if (!format.has_header) {
        for (size_t i = 0; i < width; ++i) table.columns.push_back("c" + std::to_string(i));
      }
    }
    if (cells.size() != width) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(width) + " fields, got " + std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

RawTable load_table_file(const std::string& path, const TableFormat& format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return load_table(in, format);
}

DropResult drop_incomplete(const RawTable& table, const std::vector<std::string>& used_columns,
                           const std::string& missing_marker) {
  std::vector<int> used;
  if (used_columns.empty()) {
    used.resize(table.columns.size());
    std::iota(used.begin(), used.end(), 0);
  } else {
    for (const std::string& c : used_columns) {
      int idx = table.column_index(c);
      if (idx < 0) throw DataError("drop_incomplete: unknown column " + c);
      used.push_back(idx);
    }
  }
  DropResult result;
  result.table.columns = table.columns;
  for (const auto& row : table.rows) {
    bool missing = false;
    for (int c : used) missing |= (row[static_cast<size_t>(c)] == missing_marker);
    if (missing) {
      ++result.dropped;
    } else {
      result.table.rows.push_back(row);
      ++result.kept;
    }
  }
  return result;
}

std::vector<double> equal_frequency_cutpoints(std::vector<double> values, int bins) {
  if (values.empty()) throw DomainError("equal_frequency_cutpoints: empty input");
  if (bins < 2) throw DomainError("equal_frequency_cutpoints: bins must be >= 2");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();

  // Boundary positions from group sizes floor(n/b) / ceil(n/b); the first
  // n mod b groups take the extra element.
  std::vector<size_t> boundaries;
  const size_t base = n / static_cast<size_t>(bins);
  const size_t rem = n % static_cast<size_t>(bins);
  size_t pos = 0;
  for (int g = 0; g + 1 < bins; ++g) {
    pos += base + (static_cast<size_t>(g) < rem ? 1 : 0);
    boundaries.push_back(pos);
  }

  std::vector<double> cuts;
  for (size_t b : boundaries) {
    size_t p = b;
    if (p == 0 || p >= n) continue;
    if (values[p - 1] == values[p]) {
      // Shift off the tie run to the nearest differing adjacent pair.
      size_t best = 0;
      bool found = false;
      for (size_t d = 1; d < n; ++d) {
        const bool left_ok = p >= d + 1 && values[p - d - 1] != values[p - d];
        const bool right_ok = p + d < n && values[p + d - 1] != values[p + d];
        if (left_ok) {
          best = p - d;
          found = true;
          break;
        }
        if (right_ok) {
          best = p + d;
          found = true;
          break;
        }
      }
      if (!found) continue;  // all values equal
      p = best;
    }
    cuts.push_back((values[p - 1] + values[p]) / 2.0);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

int bin_of(double value, const std::vector<double>& cuts) {
  int bin = 0;
  for (double c : cuts) {
    if (value > c) ++bin;
  }
  return bin;
}

DiscretizeResult discretize(const RawTable& table, const DiscretizationSpec& spec) {
  DiscretizeResult result;
  std::vector<int> src_cols;
  std::vector<const ColumnRecipe*> recipes;
  int class_src = -1;

  for (size_t i = 0; i < table.columns.size(); ++i) {
    const std::string& name = table.columns[i];
    auto it = spec.columns.find(name);
    if (it == spec.columns.end()) {
      throw DataError("discretize: no recipe for column " + name);
    }
    if (it->second.kind == ColumnRecipe::Kind::Ignore) continue;
    if (it->second.kind == ColumnRecipe::Kind::ClassThreshold ||
        it->second.kind == ColumnRecipe::Kind::ClassLabels) {
      if (class_src >= 0) throw DataError("discretize: multiple class columns");
      class_src = static_cast<int>(i);
    }
    src_cols.push_back(static_cast<int>(i));
    recipes.push_back(&it->second);
  }
  if (class_src < 0) throw DataError("discretize: no class column in recipe");

  // Pass 1: collect numeric values (ordinal columns flagged for re-binning
  // contribute their codes) and compute cut points over the full table.
  std::vector<std::vector<double>> cuts_per_col(src_cols.size());
  for (size_t s = 0; s < src_cols.size(); ++s) {
    const ColumnRecipe& recipe = *recipes[s];
    const int col = src_cols[s];
    const bool binned = recipe.kind == ColumnRecipe::Kind::Numeric ||
                        (recipe.kind == ColumnRecipe::Kind::Ordinal && recipe.rebin);
    if (!binned) continue;
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (size_t r = 0; r < table.rows.size(); ++r) {
      const std::string& cell = table.rows[r][static_cast<size_t>(col)];
      if (recipe.kind == ColumnRecipe::Kind::Numeric) {
        values.push_back(parse_number(cell, r, table.columns[static_cast<size_t>(col)]));
      } else {
        auto it = recipe.labels.find(cell);
        if (it == recipe.labels.end()) {
          throw DataError("row " + std::to_string(r + 1) + ", column " +
                          table.columns[static_cast<size_t>(col)] + ": unknown label '" +
                          cell + "'");
        }
        values.push_back(static_cast<double>(it->second));
      }
    }
    cuts_per_col[s] = equal_frequency_cutpoints(std::move(values), spec.bins);
    result.cutpoints[table.columns[static_cast<size_t>(col)]] = cuts_per_col[s];
  }

  // Pass 2: emit codes and the schema.
  DiscreteDataset& data = result.data;
  for (size_t s = 0; s < src_cols.size(); ++s) {
    const ColumnRecipe& recipe = *recipes[s];
    const std::string& name = table.columns[static_cast<size_t>(src_cols[s])];
    int card = 0;
    switch (recipe.kind) {
      case ColumnRecipe::Kind::Numeric:
        card = static_cast<int>(cuts_per_col[s].size()) + 1;
        break;
      case ColumnRecipe::Kind::Ordinal:
        if (recipe.rebin) {
          card = static_cast<int>(cuts_per_col[s].size()) + 1;
        } else {
          for (const auto& [_, code] : recipe.labels) card = std::max(card, code + 1);
        }
        break;
      case ColumnRecipe::Kind::ClassThreshold:
      case ColumnRecipe::Kind::ClassLabels:
        card = 2;
        data.class_col = static_cast<int>(s);
        break;
      case ColumnRecipe::Kind::Ignore:
        break;
    }
    data.schema.push_back({name, card});
  }

  data.rows.reserve(table.rows.size());
  for (size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<int> row(src_cols.size(), 0);
    for (size_t s = 0; s < src_cols.size(); ++s) {
      const ColumnRecipe& recipe = *recipes[s];
      const int col = src_cols[s];
      const std::string& cell = table.rows[r][static_cast<size_t>(col)];
      const std::string& name = table.columns[static_cast<size_t>(col)];
      switch (recipe.kind) {
        case ColumnRecipe::Kind::Numeric:
          row[s] = bin_of(parse_number(cell, r, name), cuts_per_col[s]);
          break;
        case ColumnRecipe::Kind::Ordinal: {
          auto it = recipe.labels.find(cell);
          if (it == recipe.labels.end()) {
            throw DataError("row " + std::to_string(r + 1) + ", column " + name +
                            ": unknown label '" + cell + "'");
          }
          row[s] = recipe.rebin ? bin_of(static_cast<double>(it->second), cuts_per_col[s])
                                : it->second;
          break;
        }
        case ColumnRecipe::Kind::ClassThreshold:
          row[s] = parse_number(cell, r, name) > recipe.threshold ? 1 : 0;
          break;
        case ColumnRecipe::Kind::ClassLabels: {
          auto it = recipe.labels.find(cell);
          if (it == recipe.labels.end()) {
            throw DataError("row " + std::to_string(r + 1) + ", column " + name +
                            ": unknown class label '" + cell + "'");
          }
          row[s] = it->second;
          break;
        }
        case ColumnRecipe::Kind::Ignore:
          break;
      }
    }
    data.rows.push_back(std::move(row));
  }
  return result;
}

DiscreteDataset load_discrete_csv(const std::string& path, const QualitativeModel& model) {
  RawTable table = load_table_file(path);
  DiscreteDataset data;
  std::vector<int> src(model.variables.size(), -1);
  for (size_t v = 0; v < model.variables.size(); ++v) {
    int col = table.column_index(model.variables[v].name);
    if (col < 0) throw DataError("dataset is missing column " + model.variables[v].name);
    src[v] = col;
    data.schema.push_back({model.variables[v].name, model.variables[v].cardinality});
  }
  data.class_col = model.class_index();
  for (size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<int> row(model.variables.size(), 0);
    for (size_t v = 0; v < model.variables.size(); ++v) {
      const std::string& cell = table.rows[r][static_cast<size_t>(src[v])];
      const double num = parse_number(cell, r, model.variables[v].name);
      const int code = static_cast<int>(std::llround(num));
      if (static_cast<double>(code) != num || code < 0 ||
          code >= model.variables[v].cardinality) {
        throw DataError("row " + std::to_string(r + 1) + ", column " +
                        model.variables[v].name + ": state code out of range: " + cell);
      }
      row[v] = code;
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

void write_discrete_csv(const DiscreteDataset& data, std::ostream& out) {
  for (size_t i = 0; i < data.schema.size(); ++i) {
    out << (i ? "," : "") << data.schema[i].name;
  }
  out << "\n";
  for (const auto& row : data.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

Split stratified_split(const DiscreteDataset& data, const SplitSpec& spec) {
  if (spec.test_fraction <= 0.0 || spec.test_fraction >= 1.0) {
    throw DomainError("test fraction must lie in (0, 1)");
  }
  if (data.class_col < 0) throw DomainError("stratified_split: dataset has no class column");
  const int card = data.schema[static_cast<size_t>(data.class_col)].cardinality;

  std::vector<std::vector<size_t>> by_class(static_cast<size_t>(card));
  for (size_t r = 0; r < data.rows.size(); ++r) {
    by_class[static_cast<size_t>(data.rows[r][static_cast<size_t>(data.class_col)])].push_back(r);
  }

  // Largest-remainder quotas per class.
  const long long total =
      std::llround(static_cast<double>(data.rows.size()) * spec.test_fraction);
  std::vector<size_t> quota(static_cast<size_t>(card), 0);
  std::vector<std::pair<double, int>> remainders;
  long long assigned = 0;
  for (int c = 0; c < card; ++c) {
    const double exact = static_cast<double>(by_class[static_cast<size_t>(c)].size()) *
                         spec.test_fraction;
    quota[static_cast<size_t>(c)] = static_cast<size_t>(std::floor(exact));
    assigned += static_cast<long long>(quota[static_cast<size_t>(c)]);
    remainders.push_back({exact - std::floor(exact), c});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t i = 0; assigned < total && i < remainders.size(); ++i) {
    size_t c = static_cast<size_t>(remainders[i].second);
    if (quota[c] < by_class[c].size()) {
      ++quota[c];
      ++assigned;
    }
  }

  Rng rng(derive_seed(spec.seed, /*stream=*/0x53504C49));  // "SPLI"
  std::vector<char> in_test(data.rows.size(), 0);
  for (int c = 0; c < card; ++c) {
    auto& idx = by_class[static_cast<size_t>(c)];
    const size_t q = quota[static_cast<size_t>(c)];
    if (q > 0 && idx.empty()) throw DomainError("stratified_split: empty class stratum");
    std::vector<size_t> picked = rng.sample_indices(idx.size(), q);
    for (size_t p : picked) in_test[idx[p]] = 1;
  }

  Split split;
  split.train_pool.schema = data.schema;
  split.train_pool.class_col = data.class_col;
  split.test.schema = data.schema;
  split.test.class_col = data.class_col;
  for (size_t r = 0; r < data.rows.size(); ++r) {
    (in_test[r] ? split.test : split.train_pool).rows.push_back(data.rows[r]);
  }
  return split;
}

DiscreteDataset sample_training_set(const DiscreteDataset& pool, size_t m, uint64_t seed) {
  if (m > pool.rows.size()) {
    throw DomainError("sample_training_set: m = " + std::to_string(m) +
                      " exceeds pool size " + std::to_string(pool.rows.size()));
  }
  Rng rng(seed);
  std::vector<size_t> picked = rng.sample_indices(pool.rows.size(), m);
  DiscreteDataset sample;
  sample.schema = pool.schema;
  sample.class_col = pool.class_col;
  for (size_t p : picked) sample.rows.push_back(pool.rows[p]);
  return sample;
}

QualitativeModel parse_qualitative_model(std::istream& in) {
  QualitativeModel model;
  std::string line;
  size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::string keyword;
    if (!(ss >> keyword)) continue;
    if (keyword == "network") {
      if (!(ss >> model.name)) fail("expected: network <name>");
    } else if (keyword == "var") {
      Variable v;
      if (!(ss >> v.name >> v.cardinality)) fail("expected: var <name> <cardinality>");
      model.variables.push_back(v);
    } else if (keyword == "class") {
      if (!(ss >> model.class_variable)) fail("expected: class <name>");
    } else if (keyword == "edge") {
      std::string parent, arrow, child, sign;
      if (!(ss >> parent >> arrow >> child >> sign) || arrow != "->") {
        fail("expected: edge <parent> -> <child> (q+|q-|none)");
      }
      MonotoneSign s;
      if (sign == "q+") {
        s = MonotoneSign::Isotone;
      } else if (sign == "q-") {
        s = MonotoneSign::Antitone;
      } else if (sign == "none") {
        s = MonotoneSign::Unannotated;
      } else {
        fail("unknown sign token '" + sign + "'");
        return model;  // unreachable
      }
      model.edges.push_back({parent, child, s});
    } else {
      fail("unknown directive '" + keyword + "'");
    }
    std::string extra;
    if (ss >> extra) fail("trailing token '" + extra + "'");
  }
  ValidationReport report = validate_model(model);
  if (!report.ok()) {
    std::string msg = "invalid model:";
    for (const std::string& v : report.violations) msg += "\n  " + v;
    throw ParseError(msg);
  }
  return model;
}

QualitativeModel parse_qualitative_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_qualitative_model(in);
}

}  // namespace monobn
