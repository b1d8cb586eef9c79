#ifndef SNTREE_PREDICTOR_HPP
#define SNTREE_PREDICTOR_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sntree/tree.hpp"

namespace snt {

// Regressors for fast edit-distance prediction: the distance between the
// self-nested approximations plus {size, height, outdegree, strahler} for
// both inputs and both approximations. 17 features, fixed order.
inline constexpr std::size_t kFeatureCount = 17;

extern const std::array<const char*, kFeatureCount> kFeatureNames;

struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    double delta_hat() const { return values[0]; }
};

struct DatasetRow {
    FeatureVector features;
    double delta_true = 0.0;
};

struct LinearModel {
    std::vector<std::string> feature_names;  // without the intercept
    std::vector<double> coefficients;        // intercept last
    std::uint64_t rows = 0;
    std::uint64_t seed = 0;
    bool ridge_used = false;
};

struct ErrorSummary {
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    std::size_t used = 0;
    std::size_t excluded_zero_true = 0;  // rows with true distance 0
};

FeatureVector make_features(const Tree& a, const Tree& b);

// Independent random tree pairs with sizes uniform in [size_lo, size_hi];
// row i derives its own stream from (seed, i), so parallel generation gives
// the same dataset as a serial run.
std::vector<DatasetRow> generate_dataset(std::size_t pairs, std::uint64_t size_lo,
                                         std::uint64_t size_hi, std::uint64_t seed);
std::vector<DatasetRow> generate_dataset_serial(std::size_t pairs, std::uint64_t size_lo,
                                                std::uint64_t size_hi, std::uint64_t seed);

// Least squares through the normal equations on the selected features plus
// an intercept. A numerically singular Gram matrix falls back to a ridge of
// 1e-8 on the diagonal, recorded in the model. Needs >= 2x more rows than
// coefficients.
LinearModel fit_ols(const std::vector<DatasetRow>& rows,
                    const std::vector<std::size_t>& feature_subset);
LinearModel fit_ols(const std::vector<DatasetRow>& rows);  // all 17 features

double predict(const LinearModel& model, const FeatureVector& features);

// Relative errors (predicted - true) / true; rows with true distance zero
// are excluded and counted.
ErrorSummary evaluate_model(const LinearModel& model, const std::vector<DatasetRow>& rows);

// Feature indices kept when the approximation-derived regressors (delta_hat
// and everything about the approximated trees) are dropped.
std::vector<std::size_t> plain_feature_subset();
std::vector<std::size_t> full_feature_subset();

// Text formats: model file and dataset CSV.
std::string model_to_text(const LinearModel& model);
LinearModel model_parse(const std::string& text);
void write_model_file(const std::string& path, const LinearModel& model);
LinearModel read_model_file(const std::string& path);

std::string dataset_to_csv(const std::vector<DatasetRow>& rows);
std::vector<DatasetRow> dataset_parse_csv(const std::string& text);
void write_dataset_file(const std::string& path, const std::vector<DatasetRow>& rows);
std::vector<DatasetRow> read_dataset_file(const std::string& path);

}  // namespace snt

#endif
