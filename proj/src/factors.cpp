// SPDX-License-Identifier: Apache-2.0
#include "corpuslens/factors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace corpuslens::factors {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Standardized zscore(const MatrixXd& x, Diagnostics* diag) {
  const auto n = x.rows();
  if (n < 2) throw DomainError("standardization needs at least 2 rows");
  Standardized out;
  std::vector<Eigen::Index> cols;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    double sum = 0;
    Eigen::Index cnt = 0;
    for (Eigen::Index r = 0; r < n; ++r)
      if (!std::isnan(x(r, c))) sum += x(r, c), ++cnt;
    if (cnt == 0) throw DomainError("column " + std::to_string(c) + " has no values");
    const double mean = sum / static_cast<double>(cnt);
    double ss = 0;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double v = std::isnan(x(r, c)) ? mean : x(r, c);
      ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
      warn(diag, "column " + std::to_string(c) + " is constant and was dropped");
      continue;
    }
    cols.push_back(c);
    out.kept.push_back(static_cast<std::size_t>(c));
    out.means.push_back(mean);
    out.sds.push_back(sd);
  }
  out.z.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (Eigen::Index r = 0; r < n; ++r) {
      const double v = x(r, cols[j]);
      out.z(r, static_cast<Eigen::Index>(j)) = std::isnan(v) ? 0.0 : (v - out.means[j]) / out.sds[j];
    }
  return out;
}

MatrixXd correlation(const MatrixXd& z) {
  if (z.rows() < 2) throw DomainError("correlation needs at least 2 rows");
  MatrixXd r = (z.transpose() * z) / static_cast<double>(z.rows() - 1);
  return (r + r.transpose()) / 2.0;
}

namespace {

// Flips each column so that its largest-magnitude entry is positive.
void orient_columns(MatrixXd& m, MatrixXd* companion = nullptr) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index best = 0;
    m.col(j).cwiseAbs().maxCoeff(&best);
    if (m(best, j) < 0) {
      m.col(j) *= -1.0;
      if (companion) companion->col(j) *= -1.0;
    }
  }
}

VectorXd initial_communalities(const MatrixXd& r) {
  const auto p = r.rows();
  VectorXd h(p);
  Eigen::LDLT<MatrixXd> ldlt(r);
  bool ok = ldlt.info() == Eigen::Success && ldlt.isPositive();
  if (ok) {
    const MatrixXd inv = ldlt.solve(MatrixXd::Identity(p, p));
    for (Eigen::Index i = 0; i < p; ++i) {
      const double d = inv(i, i);
      if (!std::isfinite(d) || d < 1.0 - 1e-9) {
        ok = false;
        break;
      }
      h(i) = 1.0 - 1.0 / d;
    }
  }
  if (!ok) {
    // near-singular matrix: largest absolute off-diagonal correlation
    for (Eigen::Index i = 0; i < p; ++i) {
      double m = 0;
      for (Eigen::Index j = 0; j < p; ++j)
        if (j != i) m = std::max(m, std::abs(r(i, j)));
      h(i) = m;
    }
  }
  return h.cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace

PrincipalAxisResult principal_axis(const MatrixXd& corr, std::size_t k, Diagnostics* diag, double tol,
                                   std::size_t max_iter) {
  if (corr.rows() != corr.cols()) throw DomainError("correlation matrix must be square");
  const auto p = corr.rows();
  if (k == 0) throw ConfigError("number of factors must be at least 1");
  if (static_cast<Eigen::Index>(k) > p)
    throw ConfigError("cannot extract " + std::to_string(k) + " factors from " + std::to_string(p) + " features");
  const MatrixXd r = (corr + corr.transpose()) / 2.0;
  const auto kk = static_cast<Eigen::Index>(k);

  VectorXd h = initial_communalities(r);
  PrincipalAxisResult best;
  double best_delta = std::numeric_limits<double>::infinity();
  bool heywood = false;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    MatrixXd reduced = r;
    reduced.diagonal() = h;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(reduced);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    MatrixXd load(p, kk);
    for (Eigen::Index j = 0; j < kk; ++j) {
      const Eigen::Index src = p - 1 - j;  // eigenvalues ascend
      const double lambda = std::max(0.0, es.eigenvalues()(src));
      load.col(j) = es.eigenvectors().col(src) * std::sqrt(lambda);
    }
    orient_columns(load);
    for (Eigen::Index i = 0; i < p; ++i) {
      const double norm2 = load.row(i).squaredNorm();
      if (norm2 > 1.0) {
        load.row(i) /= std::sqrt(norm2);
        heywood = true;
      }
    }
    const VectorXd h_new = load.rowwise().squaredNorm();
    const double delta = (h_new - h).cwiseAbs().maxCoeff();
    if (delta <= best_delta) {
      best_delta = delta;
      best.loadings = load;
      best.communalities = h_new;
      best.iterations = it;
    }
    h = h_new;
    if (delta < tol) {
      best.loadings = load;
      best.communalities = h_new;
      best.iterations = it;
      best.converged = true;
      break;
    }
  }
  if (heywood) warn(diag, "communality above 1 encountered (Heywood case); affected rows were rescaled to 1");
  if (!best.converged)
    warn(diag, "principal-axis factoring did not converge in " + std::to_string(max_iter) + " iterations");
  return best;
}

namespace {
MatrixXd kaiser_normalize(const MatrixXd& l, VectorXd& norms) {
  norms = l.rowwise().norm();
  MatrixXd b = l;
  for (Eigen::Index i = 0; i < l.rows(); ++i)
    if (norms(i) > 1e-12) b.row(i) /= norms(i);
  return b;
}

double raw_criterion(const MatrixXd& b) {
  const double p = static_cast<double>(b.rows());
  double total = 0;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const VectorXd sq = b.col(j).array().square();
    const double mean = sq.sum() / p;
    total += sq.array().square().sum() / p - mean * mean;
  }
  return total;
}
}  // namespace

double varimax_criterion(const MatrixXd& loadings) {
  VectorXd norms;
  return raw_criterion(kaiser_normalize(loadings, norms));
}

VarimaxResult varimax(const MatrixXd& loadings, double tol, std::size_t max_sweeps) {
  const auto p = loadings.rows();
  const auto k = loadings.cols();
  VarimaxResult out;
  out.rotation = MatrixXd::Identity(k, k);
  VectorXd norms;
  MatrixXd b = kaiser_normalize(loadings, norms);
  double crit = raw_criterion(b);
  out.criterion_history.push_back(crit);
  if (k >= 2) {
    const double pd = static_cast<double>(p);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
      for (Eigen::Index a = 0; a < k - 1; ++a)
        for (Eigen::Index c = a + 1; c < k; ++c) {
          double sa = 0, sb = 0, sc = 0, sd = 0;
          for (Eigen::Index i = 0; i < p; ++i) {
            const double x = b(i, a), y = b(i, c);
            const double u = x * x - y * y, v = 2 * x * y;
            sa += u;
            sb += v;
            sc += u * u - v * v;
            sd += 2 * u * v;
          }
          const double num = sd - 2 * sa * sb / pd;
          const double den = sc - (sa * sa - sb * sb) / pd;
          const double phi = std::atan2(num, den) / 4.0;
          if (std::abs(phi) < 1e-15) continue;
          const double cs = std::cos(phi), sn = std::sin(phi);
          const VectorXd ba = b.col(a), bc = b.col(c);
          b.col(a) = cs * ba + sn * bc;
          b.col(c) = -sn * ba + cs * bc;
          const VectorXd ta = out.rotation.col(a), tc = out.rotation.col(c);
          out.rotation.col(a) = cs * ta + sn * tc;
          out.rotation.col(c) = -sn * ta + cs * tc;
        }
      const double next = raw_criterion(b);
      out.criterion_history.push_back(next);
      const double gain = next - crit;
      crit = next;
      if (gain < tol) break;
    }
  }
  out.loadings = loadings * out.rotation;
  return out;
}

double tucker_congruence(const VectorXd& a, const VectorXd& b) {
  if (a.size() != b.size()) throw DomainError("congruence of vectors with different lengths");
  const double d = a.norm() * b.norm();
  if (!(d > 0)) throw UndefinedError("congruence with a zero vector is undefined");
  return a.dot(b) / d;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& factor_groups() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> groups{
      {"valence", {"AAP_all", "AAP_nouns", "AAP_verbs", "ims_valence", "pnr"}},
      {"arousal", {"arousal", "anger", "disgust", "fear", "sadness"}},
      {"concreteness", {"concreteness", "imageability"}},
      {"word_complexity", {"word_length", "syllables", "odc", "sonority"}},
      {"sentence_complexity",
       {"sentence_length", "n_content_words", "phrase_density", "ssi", "content_word_overlap", "sentence_similarity"}},
  };
  return groups;
}

std::vector<std::string> label_factors(const MatrixXd& loadings, const std::vector<std::string>& feature_names) {
  const auto& groups = factor_groups();
  const std::size_t k = static_cast<std::size_t>(loadings.cols());
  const std::size_t g = groups.size();
  std::unordered_map<std::string, Eigen::Index> row;
  for (std::size_t i = 0; i < feature_names.size(); ++i) row.emplace(feature_names[i], static_cast<Eigen::Index>(i));
  // score[f][grp] = mean |loading| of the group's features present
  std::vector<std::vector<double>> score(k, std::vector<double>(g, 0.0));
  for (std::size_t f = 0; f < k; ++f)
    for (std::size_t q = 0; q < g; ++q) {
      double s = 0;
      std::size_t n = 0;
      for (const auto& name : groups[q].second)
        if (auto it = row.find(name); it != row.end()) s += std::abs(loadings(it->second, static_cast<Eigen::Index>(f))), ++n;
      score[f][q] = n == 0 ? 0.0 : s / static_cast<double>(n);
    }

  std::vector<int> assign(k, -1);
  if (k <= g) {
    // exhaustive search over injective assignments
    std::vector<std::size_t> perm(g);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1;
    do {
      double t = 0;
      for (std::size_t f = 0; f < k; ++f) t += score[f][perm[f]];
      if (t > best + 1e-12) {
        best = t;
        for (std::size_t f = 0; f < k; ++f) assign[f] = static_cast<int>(perm[f]);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<bool> used(g, false);
    for (std::size_t round = 0; round < g; ++round) {
      double best = -1;
      std::size_t bf = 0, bq = 0;
      for (std::size_t f = 0; f < k; ++f)
        for (std::size_t q = 0; q < g; ++q)
          if (assign[f] < 0 && !used[q] && score[f][q] > best) best = score[f][q], bf = f, bq = q;
      assign[bf] = static_cast<int>(bq);
      used[bq] = true;
    }
  }
  std::vector<std::string> names(k);
  for (std::size_t f = 0; f < k; ++f)
    names[f] = assign[f] >= 0 && score[f][static_cast<std::size_t>(assign[f])] > 0
                   ? groups[static_cast<std::size_t>(assign[f])].first
                   : "factor_" + std::to_string(f + 1);
  return names;
}

namespace {

MatrixXd scoring_weights(const MatrixXd& r, const MatrixXd& loadings, Diagnostics* diag) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(r);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  MatrixXd a = r;
  if (!(lo > 1e-10 * std::max(1.0, hi))) {
    warn(diag, "correlation matrix is singular; scoring uses a ridge-regularized inverse");
    a.diagonal().array() += 1e-6;
  }
  return a.ldlt().solve(loadings);
}

}  // namespace

FactorModel fit_factor_model(const MatrixXd& x, const std::vector<std::string>& feature_names, std::size_t k,
                             Diagnostics* diag) {
  if (static_cast<Eigen::Index>(feature_names.size()) != x.cols())
    throw DomainError("feature name count does not match the matrix");
  // drop columns without any value
  std::vector<Eigen::Index> present;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    if (x.col(c).array().isNaN().all())
      warn(diag, "feature '" + feature_names[static_cast<std::size_t>(c)] + "' has no values and was left out");
    else
      present.push_back(c);
  }
  MatrixXd xp(x.rows(), static_cast<Eigen::Index>(present.size()));
  for (std::size_t j = 0; j < present.size(); ++j) xp.col(static_cast<Eigen::Index>(j)) = x.col(present[j]);
  if (x.rows() < static_cast<Eigen::Index>(2 * k))
    warn(diag, "only " + std::to_string(x.rows()) + " rows for " + std::to_string(k) + " factors");

  Diagnostics local;
  const Standardized st = zscore(xp, &local);
  std::vector<bool> kept(present.size(), false);
  for (auto j : st.kept) kept[j] = true;
  for (std::size_t j = 0; j < present.size(); ++j)
    if (!kept[j])
      warn(diag, "feature '" + feature_names[static_cast<std::size_t>(present[j])] + "' is constant and was left out");
  FactorModel m;
  for (std::size_t j = 0; j < st.kept.size(); ++j) {
    const auto src = static_cast<std::size_t>(present[st.kept[j]]);
    m.feature_names.push_back(feature_names[src]);
  }
  m.means = st.means;
  m.sds = st.sds;
  m.correlation = correlation(st.z);

  const PrincipalAxisResult pa = principal_axis(m.correlation, k, diag);
  m.converged = pa.converged;
  m.iterations = pa.iterations;
  m.unrotated = pa.loadings;
  m.communalities = pa.communalities;

  VarimaxResult vm = varimax(pa.loadings);
  MatrixXd load = vm.loadings;
  MatrixXd rot = vm.rotation;
  orient_columns(load, &rot);

  // order by explained variance, largest first
  const auto kk = load.cols();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(kk));
  std::iota(order.begin(), order.end(), 0);
  const VectorXd var = load.colwise().squaredNorm();
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return var(a) > var(b); });
  m.loadings.resize(load.rows(), kk);
  m.rotation.resize(kk, kk);
  for (Eigen::Index j = 0; j < kk; ++j) {
    m.loadings.col(j) = load.col(order[static_cast<std::size_t>(j)]);
    m.rotation.col(j) = rot.col(order[static_cast<std::size_t>(j)]);
  }

  m.factor_names = label_factors(m.loadings, m.feature_names);
  const auto aap = std::find(m.feature_names.begin(), m.feature_names.end(), "AAP_all");
  for (Eigen::Index j = 0; j < kk; ++j)
    if (m.factor_names[static_cast<std::size_t>(j)] == "valence" && aap != m.feature_names.end() &&
        m.loadings(aap - m.feature_names.begin(), j) < 0) {
      m.loadings.col(j) *= -1.0;
      m.rotation.col(j) *= -1.0;
    }

  const double p = static_cast<double>(m.loadings.rows());
  for (Eigen::Index j = 0; j < kk; ++j) m.explained_variance.push_back(m.loadings.col(j).squaredNorm() / p);
  m.total_explained_variance = m.communalities.sum() / p;
  m.weights = scoring_weights(m.correlation, m.loadings, diag);
  return m;
}

MatrixXd select_columns(const features::FeatureMatrix& m, const std::vector<std::string>& names) {
  MatrixXd x(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto c = m.column(names[j]);
    if (!c) throw ConfigError("feature matrix has no column '" + names[j] + "'");
    for (std::size_t r = 0; r < m.rows(); ++r) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = m.at(r, *c);
  }
  return x;
}

FactorModel fit_factor_model(const features::FeatureMatrix& m, std::size_t k, Diagnostics* diag) {
  return fit_factor_model(select_columns(m, m.columns), m.columns, k, diag);
}

MatrixXd score_rows(const FactorModel& model, const MatrixXd& x) {
  const auto p = static_cast<Eigen::Index>(model.feature_names.size());
  if (x.cols() != p) throw DomainError("score input has " + std::to_string(x.cols()) + " columns, expected " + std::to_string(p));
  MatrixXd z(x.rows(), p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const double v = x(r, j);
      z(r, j) = std::isnan(v) ? 0.0 : (v - model.means[static_cast<std::size_t>(j)]) / model.sds[static_cast<std::size_t>(j)];
    }
  return z * model.weights;
}

FactorScores factor_scores(const FactorModel& model, const features::FeatureMatrix& m) {
  FactorScores out;
  out.factor_names = model.factor_names;
  out.sentence_scores = score_rows(model, select_columns(m, model.feature_names));
  out.documents = m.documents();
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < out.documents.size(); ++i) slot.emplace(out.documents[i], i);
  const auto k = out.sentence_scores.cols();
  out.document_scores = MatrixXd::Zero(static_cast<Eigen::Index>(out.documents.size()), k);
  std::vector<double> count(out.documents.size(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto d = slot.at(m.doc_ids[r]);
    out.document_scores.row(static_cast<Eigen::Index>(d)) += out.sentence_scores.row(static_cast<Eigen::Index>(r));
    count[d] += 1;
  }
  for (std::size_t d = 0; d < count.size(); ++d)
    if (count[d] > 0) out.document_scores.row(static_cast<Eigen::Index>(d)) /= count[d];
  return out;
}

namespace {
nlohmann::json matrix_json(const MatrixXd& m) {
  auto j = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(std::move(row));
  }
  return j;
}

MatrixXd matrix_from(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw ConfigError(std::string("factor model field '") + what + "' has the wrong shape");
  MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ConfigError(std::string("factor model field '") + what + "' has the wrong shape");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}
}  // namespace

nlohmann::json to_json(const FactorModel& m) {
  nlohmann::json j;
  j["feature_names"] = m.feature_names;
  j["factor_names"] = m.factor_names;
  j["loadings"] = matrix_json(m.loadings);
  j["unrotated_loadings"] = matrix_json(m.unrotated);
  j["communalities"] = std::vector<double>(m.communalities.data(), m.communalities.data() + m.communalities.size());
  j["rotation"] = matrix_json(m.rotation);
  j["explained_variance"] = m.explained_variance;
  j["total_explained_variance"] = m.total_explained_variance;
  j["means"] = m.means;
  j["sds"] = m.sds;
  j["correlation"] = matrix_json(m.correlation);
  j["weights"] = matrix_json(m.weights);
  j["converged"] = m.converged;
  j["iterations"] = m.iterations;
  return j;
}

FactorModel model_from_json(const nlohmann::json& j) {
  try {
    FactorModel m;
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.factor_names = j.at("factor_names").get<std::vector<std::string>>();
    const auto p = static_cast<Eigen::Index>(m.feature_names.size());
    const auto k = static_cast<Eigen::Index>(m.factor_names.size());
    m.loadings = matrix_from(j.at("loadings"), p, k, "loadings");
    m.unrotated = j.contains("unrotated_loadings") ? matrix_from(j["unrotated_loadings"], p, k, "unrotated_loadings") : m.loadings;
    const auto h = j.at("communalities").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(h.size()) != p) throw ConfigError("factor model field 'communalities' has the wrong shape");
    m.communalities = Eigen::Map<const VectorXd>(h.data(), p);
    m.rotation = matrix_from(j.at("rotation"), k, k, "rotation");
    m.means = j.at("means").get<std::vector<double>>();
    m.sds = j.at("sds").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(m.means.size()) != p || static_cast<Eigen::Index>(m.sds.size()) != p)
      throw ConfigError("factor model means/sds have the wrong length");
    m.weights = matrix_from(j.at("weights"), p, k, "weights");
    if (j.contains("correlation")) m.correlation = matrix_from(j["correlation"], p, p, "correlation");
    if (j.contains("explained_variance")) m.explained_variance = j["explained_variance"].get<std::vector<double>>();
    m.total_explained_variance = j.value("total_explained_variance", m.communalities.sum() / static_cast<double>(p));
    m.converged = j.value("converged", true);
    m.iterations = j.value("iterations", std::size_t{0});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed factor model: ") + e.what());
  }
}

}  // namespace corpuslens::factors
