#include "monobn/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "monobn/errors.hpp"
#include "monobn/io.hpp"
#include "monobn/rng.hpp"

namespace monobn {

namespace {

constexpr double kChiSquare95 = 3.841;  // chi-square(1) critical value at alpha = 0.05
constexpr uint64_t kSampleStream = 0x53414D50;  // "SAMP"

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

ExperimentSpec ExperimentSpec::defaults() {
  ExperimentSpec spec;
  for (int m = 1; m <= 50; ++m) spec.sizes.push_back(m);
  for (const char* name : {"ZR", "NB", "KB", "CKB0", "CKB0.1", "CKB0.2"}) {
    spec.classifiers.push_back(ClassifierKind::parse(name));
  }
  return spec;
}

double CurveCell::mean() const {
  if (accuracies.empty()) return 0.0;
  return std::accumulate(accuracies.begin(), accuracies.end(), 0.0) /
         static_cast<double>(accuracies.size());
}

double CurveCell::stddev() const {
  if (accuracies.size() < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double a : accuracies) ss += (a - m) * (a - m);
  return std::sqrt(ss / static_cast<double>(accuracies.size() - 1));
}

int CurveCell::n_converged() const {
  int n = 0;
  for (char c : converged) n += c ? 1 : 0;
  return n;
}

McNemarResult mcnemar_test(const std::vector<int>& preds_a, const std::vector<int>& preds_b,
                           const std::vector<int>& truth) {
  if (preds_a.size() != truth.size() || preds_b.size() != truth.size()) {
    throw DomainError("mcnemar_test: prediction/truth length mismatch");
  }
  McNemarResult result;
  for (size_t i = 0; i < truth.size(); ++i) {
    const bool a_ok = preds_a[i] == truth[i];
    const bool b_ok = preds_b[i] == truth[i];
    if (a_ok && !b_ok) ++result.b;
    if (!a_ok && b_ok) ++result.c;
  }
  const int n = result.b + result.c;
  if (n == 0) {
    result.statistic = 0.0;
    result.significant = false;
    return result;
  }
  const double diff = std::abs(static_cast<double>(result.b - result.c)) - 1.0;
  result.statistic = diff * diff / static_cast<double>(n);
  result.significant = result.statistic > kChiSquare95;
  if (result.significant) result.winner = result.b > result.c ? 0 : 1;
  return result;
}

CurveOutputs run_learning_curve(const DiscreteDataset& data, const QualitativeModel& model,
                                const ExperimentSpec& spec) {
  std::vector<int> sizes = spec.sizes;
  if (sizes.empty()) sizes = ExperimentSpec::defaults().sizes;
  if (spec.replications < 1) throw DomainError("replications must be >= 1");

  Split split = stratified_split(data, {spec.test_fraction, spec.master_seed});
  for (int m : sizes) {
    if (m < 1 || static_cast<size_t>(m) > split.train_pool.rows.size()) {
      throw DomainError("training size " + std::to_string(m) +
                        " exceeds the training pool (" +
                        std::to_string(split.train_pool.rows.size()) + " rows)");
    }
  }

  std::vector<int> truth;
  truth.reserve(split.test.rows.size());
  for (const auto& row : split.test.rows) {
    truth.push_back(row[static_cast<size_t>(split.test.class_col)]);
  }

  const size_t n_clf = spec.classifiers.size();
  CurveOutputs out;
  out.curve.sizes = sizes;
  out.curve.classifier_names.reserve(n_clf);
  for (const ClassifierKind& kind : spec.classifiers) {
    out.curve.classifier_names.push_back(kind.name());
  }
  out.curve.cells.assign(n_clf, std::vector<CurveCell>(sizes.size()));
  for (size_t a = 0; a < n_clf; ++a) {
    for (size_t b = a + 1; b < n_clf; ++b) {
      PairTally tally;
      tally.a = out.curve.classifier_names[a];
      tally.b = out.curve.classifier_names[b];
      tally.wins_a.assign(sizes.size(), 0);
      tally.wins_b.assign(sizes.size(), 0);
      tally.ties.assign(sizes.size(), 0);
      out.pairs.push_back(std::move(tally));
    }
  }

  std::vector<std::vector<int>> preds(n_clf);
  for (size_t si = 0; si < sizes.size(); ++si) {
    const int m = sizes[si];
    for (int rep = 0; rep < spec.replications; ++rep) {
      const uint64_t seed = derive_seed(spec.master_seed, kSampleStream,
                                        static_cast<uint64_t>(m), static_cast<uint64_t>(rep));
      const DiscreteDataset sample =
          sample_training_set(split.train_pool, static_cast<size_t>(m), seed);
      for (size_t ci = 0; ci < n_clf; ++ci) {
        const TrainedClassifier clf =
            train(spec.classifiers[ci], sample, model, spec.fit);
        preds[ci] = predict_all(clf, split.test);
        size_t correct = 0;
        for (size_t i = 0; i < truth.size(); ++i) {
          if (preds[ci][i] == truth[i]) ++correct;
        }
        CurveCell& cell = out.curve.cells[ci][si];
        cell.accuracies.push_back(static_cast<double>(correct) /
                                  static_cast<double>(truth.size()));
        cell.converged.push_back(clf.converged ? 1 : 0);
      }
      size_t pair_idx = 0;
      for (size_t a = 0; a < n_clf; ++a) {
        for (size_t b = a + 1; b < n_clf; ++b, ++pair_idx) {
          const McNemarResult r = mcnemar_test(preds[a], preds[b], truth);
          if (!r.significant) {
            ++out.pairs[pair_idx].ties[si];
          } else if (r.winner == 0) {
            ++out.pairs[pair_idx].wins_a[si];
          } else {
            ++out.pairs[pair_idx].wins_b[si];
          }
        }
      }
    }
  }
  return out;
}

void emit_reports(const CurveOutputs& outputs, const ExperimentSpec& spec,
                  const std::filesystem::path& destination) {
  std::filesystem::create_directories(destination);

  {
    std::ofstream curve(destination / "curve.csv");
    if (!curve) throw DataError("cannot write " + (destination / "curve.csv").string());
    curve << "dataset,bins,classifier,m,mean_acc,stddev,n_converged\n";
    for (size_t ci = 0; ci < outputs.curve.classifier_names.size(); ++ci) {
      for (size_t si = 0; si < outputs.curve.sizes.size(); ++si) {
        const CurveCell& cell = outputs.curve.cells[ci][si];
        curve << spec.dataset << ',' << spec.bins << ','
              << outputs.curve.classifier_names[ci] << ',' << outputs.curve.sizes[si] << ','
              << format_double(cell.mean()) << ',' << format_double(cell.stddev()) << ','
              << cell.n_converged() << '\n';
      }
    }
  }
  {
    std::ofstream mc(destination / "mcnemar.csv");
    if (!mc) throw DataError("cannot write " + (destination / "mcnemar.csv").string());
    mc << "pair,m,wins_a,wins_b,ties\n";
    for (const PairTally& pair : outputs.pairs) {
      for (size_t si = 0; si < outputs.curve.sizes.size(); ++si) {
        mc << pair.a << "_vs_" << pair.b << ',' << outputs.curve.sizes[si] << ','
           << pair.wins_a[si] << ',' << pair.wins_b[si] << ',' << pair.ties[si] << '\n';
      }
    }
  }
  {
    std::ofstream manifest(destination / "manifest.json");
    if (!manifest) {
      throw DataError("cannot write " + (destination / "manifest.json").string());
    }
    manifest << experiment_manifest_json(spec);
  }
}

}  // namespace monobn
