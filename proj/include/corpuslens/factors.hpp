// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exploratory factor analysis: principal-axis factoring with varimax
// rotation, regression factor scores and factor labelling.

#include <Eigen/Dense>
#include <cstddef>
#include <json.hpp>
#include <string>
#include <vector>

#include "corpuslens/error.hpp"
#include "corpuslens/features.hpp"

namespace corpuslens::factors {

struct Standardized {
  Eigen::MatrixXd z;               // rows x kept columns
  std::vector<std::size_t> kept;   // input column of each output column
  std::vector<double> means;       // per kept column
  std::vector<double> sds;         // per kept column, sample sd
};

/// Column-wise z-scores with sample standard deviation. NaN cells are
/// replaced by the column mean first. Constant columns are dropped with a
/// warning; an all-missing column raises DomainError.
Standardized zscore(const Eigen::MatrixXd& x, Diagnostics* diag = nullptr);

/// Zᵀ Z / (n - 1) for z-scored data.
Eigen::MatrixXd correlation(const Eigen::MatrixXd& z);

struct PrincipalAxisResult {
  Eigen::MatrixXd loadings;         // p x k, unrotated
  Eigen::VectorXd communalities;    // row sums of squared loadings
  bool converged = false;
  std::size_t iterations = 0;
};

/// Iterated principal-axis factoring from squared-multiple-correlation
/// starting communalities; stops when no communality moves by more than
/// `tol` or after `max_iter` rounds (converged = false, best iterate kept).
PrincipalAxisResult principal_axis(const Eigen::MatrixXd& corr, std::size_t k, Diagnostics* diag = nullptr,
                                   double tol = 1e-6, std::size_t max_iter = 200);

/// Varimax criterion of Kaiser-normalized loadings: sum over columns of the
/// variance of the squared entries.
double varimax_criterion(const Eigen::MatrixXd& loadings);

struct VarimaxResult {
  Eigen::MatrixXd loadings;   // loadings * rotation
  Eigen::MatrixXd rotation;   // k x k orthogonal
  std::vector<double> criterion_history;  // after each sweep, first entry = start
};

/// Pairwise planar rotations on Kaiser-normalized loadings until a sweep
/// gains less than `tol`. One column is returned unchanged.
VarimaxResult varimax(const Eigen::MatrixXd& loadings, double tol = 1e-8, std::size_t max_sweeps = 1000);

/// Tucker's congruence coefficient a.b / (|a| |b|).
double tucker_congruence(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct FactorModel {
  std::vector<std::string> feature_names;
  std::vector<std::string> factor_names;
  Eigen::MatrixXd unrotated;      // p x k
  Eigen::MatrixXd loadings;       // p x k, rotated
  Eigen::VectorXd communalities;  // p
  Eigen::MatrixXd rotation;       // k x k
  std::vector<double> explained_variance;  // per factor, share of p
  double total_explained_variance = 0;
  std::vector<double> means;
  std::vector<double> sds;
  Eigen::MatrixXd correlation;    // p x p
  Eigen::MatrixXd weights;        // p x k scoring weights, R^-1 L
  bool converged = false;
  std::size_t iterations = 0;
};

/// Feature groups used to name factors.
const std::vector<std::pair<std::string, std::vector<std::string>>>& factor_groups();

/// Names each factor after the group whose features load on it most
/// strongly (one factor per group; leftovers become factor_<n>).
std::vector<std::string> label_factors(const Eigen::MatrixXd& loadings, const std::vector<std::string>& feature_names);

/// z-score, correlation, principal axis, varimax, sign and order
/// normalization, labelling and scoring weights. Columns with no values at
/// all are dropped with a warning before standardization.
FactorModel fit_factor_model(const Eigen::MatrixXd& x, const std::vector<std::string>& feature_names,
                             std::size_t k = 5, Diagnostics* diag = nullptr);
FactorModel fit_factor_model(const features::FeatureMatrix& m, std::size_t k = 5, Diagnostics* diag = nullptr);

/// Regression scores for raw rows (NaN cells count as the column mean).
Eigen::MatrixXd score_rows(const FactorModel& model, const Eigen::MatrixXd& x);

struct FactorScores {
  std::vector<std::string> factor_names;
  std::vector<std::string> documents;
  Eigen::MatrixXd sentence_scores;  // matrix rows x k
  Eigen::MatrixXd document_scores;  // documents x k, mean of sentence scores
};

FactorScores factor_scores(const FactorModel& model, const features::FeatureMatrix& m);

/// Columns of `m` in the model's feature order; ConfigError if one is absent.
Eigen::MatrixXd select_columns(const features::FeatureMatrix& m, const std::vector<std::string>& names);

nlohmann::json to_json(const FactorModel& model);
FactorModel model_from_json(const nlohmann::json& j);

}  // namespace corpuslens::factors
