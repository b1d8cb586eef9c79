#include "sntree/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sntree/approximation.hpp"
#include "sntree/bottomup.hpp"
#include "sntree/dag.hpp"
#include "sntree/edit_distance.hpp"
#include "sntree/error.hpp"
#include "sntree/rng.hpp"

namespace snt {

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "delta_hat",
    "size1", "height1", "outdegree1", "strahler1",
    "size2", "height2", "outdegree2", "strahler2",
    "size1_hat", "height1_hat", "outdegree1_hat", "strahler1_hat",
    "size2_hat", "height2_hat", "outdegree2_hat", "strahler2_hat",
};

namespace {

struct TreeStats {
    double size, height, outdeg, strahler;
};

TreeStats stats_of_tree(const Tree& t) {
    return {static_cast<double>(t.size()), static_cast<double>(t.height()),
            static_cast<double>(outdegree(t)), static_cast<double>(snt::strahler(t))};
}

TreeStats stats_of_linear(const LinearDag& l) {
    std::uint64_t outdeg = 0;
    for (std::uint32_t h1 = 1; h1 <= l.height(); ++h1) {
        std::uint64_t row = 0;
        for (std::uint32_t h2 = 0; h2 < h1; ++h2) row += l.label(h1, h2);
        outdeg = std::max(outdeg, row);
    }
    DagReduction d = from_linear(l);
    return {static_cast<double>(linear_size(l)), static_cast<double>(l.height()),
            static_cast<double>(outdeg), static_cast<double>(eval_dag(strahler_spec(), d))};
}

}  // namespace

FeatureVector make_features(const Tree& a, const Tree& b) {
    LinearDag la = average_to_linear(reduce(a));
    LinearDag lb = average_to_linear(reduce(b));
    std::uint64_t delta_hat = edit_distance_dag(from_linear(la), from_linear(lb));

    TreeStats s1 = stats_of_tree(a);
    TreeStats s2 = stats_of_tree(b);
    TreeStats h1 = stats_of_linear(la);
    TreeStats h2 = stats_of_linear(lb);

    FeatureVector f;
    f.values = {static_cast<double>(delta_hat),
                s1.size, s1.height, s1.outdeg, s1.strahler,
                s2.size, s2.height, s2.outdeg, s2.strahler,
                h1.size, h1.height, h1.outdeg, h1.strahler,
                h2.size, h2.height, h2.outdeg, h2.strahler};
    return f;
}

namespace {

DatasetRow make_row(std::uint64_t size_lo, std::uint64_t size_hi, std::uint64_t seed,
                    std::size_t index) {
    Rng rng(Rng::derive(seed, index));
    std::uint64_t n1 = rng.between(size_lo, size_hi);
    std::uint64_t n2 = rng.between(size_lo, size_hi);
    Tree t1 = random_tree(n1, rng.next());
    Tree t2 = random_tree(n2, rng.next());
    DatasetRow row;
    row.features = make_features(t1, t2);
    row.delta_true = static_cast<double>(edit_distance(t1, t2));
    return row;
}

std::vector<DatasetRow> generate_impl(std::size_t pairs, std::uint64_t size_lo,
                                      std::uint64_t size_hi, std::uint64_t seed, bool parallel) {
    if (size_lo < 2) throw ContractError("generate_dataset: size_lo must be >= 2");
    if (size_hi < size_lo) throw ContractError("generate_dataset: empty size range");
    std::vector<DatasetRow> rows(pairs);
    if (parallel) {
        const std::int64_t n = static_cast<std::int64_t>(pairs);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(i)] =
                make_row(size_lo, size_hi, seed, static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < pairs; ++i) rows[i] = make_row(size_lo, size_hi, seed, i);
    }
    return rows;
}

}  // namespace

std::vector<DatasetRow> generate_dataset(std::size_t pairs, std::uint64_t size_lo,
                                         std::uint64_t size_hi, std::uint64_t seed) {
    return generate_impl(pairs, size_lo, size_hi, seed, true);
}

std::vector<DatasetRow> generate_dataset_serial(std::size_t pairs, std::uint64_t size_lo,
                                                std::uint64_t size_hi, std::uint64_t seed) {
    return generate_impl(pairs, size_lo, size_hi, seed, false);
}

std::vector<std::size_t> full_feature_subset() {
    std::vector<std::size_t> all(kFeatureCount);
    std::iota(all.begin(), all.end(), 0);
    return all;
}

std::vector<std::size_t> plain_feature_subset() {
    // only the statistics of the two input trees
    return {1, 2, 3, 4, 5, 6, 7, 8};
}

LinearModel fit_ols(const std::vector<DatasetRow>& rows,
                    const std::vector<std::size_t>& feature_subset) {
    const std::size_t k = feature_subset.size() + 1;  // + intercept
    if (rows.size() < 2 * k) throw ContractError("fit_ols: need at least 2x more rows than coefficients");

    auto row_value = [&](const DatasetRow& row, std::size_t j) {
        return j < feature_subset.size() ? row.features.values[feature_subset[j]] : 1.0;
    };

    // normal equations: (X^T X) beta = X^T y
    std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
    std::vector<double> moment(k, 0.0);
    for (const DatasetRow& row : rows) {
        for (std::size_t i = 0; i < k; ++i) {
            double xi = row_value(row, i);
            moment[i] += xi * row.delta_true;
            for (std::size_t j = i; j < k; ++j) gram[i][j] += xi * row_value(row, j);
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j) gram[i][j] = gram[j][i];

    auto solve = [&](std::vector<std::vector<double>> a,
                     std::vector<double> b) -> std::vector<double> {
        const std::size_t n = b.size();
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
            if (std::fabs(a[pivot][col]) < 1e-10) return {};  // singular
            std::swap(a[col], a[pivot]);
            std::swap(b[col], b[pivot]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                double factor = a[r][col] / a[col][col];
                if (factor == 0.0) continue;
                for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
                b[r] -= factor * b[col];
            }
        }
        for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
        return b;
    };

    LinearModel model;
    model.rows = rows.size();
    std::vector<double> beta = solve(gram, moment);
    if (beta.empty()) {
        for (std::size_t i = 0; i < k; ++i) gram[i][i] += 1e-8;
        beta = solve(gram, moment);
        if (beta.empty()) throw ContractError("fit_ols: Gram matrix is degenerate");
        model.ridge_used = true;
    }
    model.coefficients = std::move(beta);
    for (std::size_t j : feature_subset) model.feature_names.push_back(kFeatureNames[j]);
    return model;
}

LinearModel fit_ols(const std::vector<DatasetRow>& rows) {
    return fit_ols(rows, full_feature_subset());
}

double predict(const LinearModel& model, const FeatureVector& features) {
    if (model.coefficients.size() != model.feature_names.size() + 1)
        throw ContractError("predict: malformed model");
    double value = model.coefficients.back();  // intercept
    for (std::size_t j = 0; j < model.feature_names.size(); ++j) {
        auto it = std::find_if(kFeatureNames.begin(), kFeatureNames.end(),
                               [&](const char* name) { return model.feature_names[j] == name; });
        if (it == kFeatureNames.end())
            throw ContractError("predict: unknown feature " + model.feature_names[j]);
        value += model.coefficients[j] *
                 features.values[static_cast<std::size_t>(it - kFeatureNames.begin())];
    }
    return value;
}

namespace {

double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    double idx = p * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(idx);
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

ErrorSummary evaluate_model(const LinearModel& model, const std::vector<DatasetRow>& rows) {
    ErrorSummary summary;
    std::vector<double> errors;
    errors.reserve(rows.size());
    for (const DatasetRow& row : rows) {
        if (row.delta_true == 0.0) {
            ++summary.excluded_zero_true;
            continue;
        }
        double e = (predict(model, row.features) - row.delta_true) / row.delta_true;
        errors.push_back(e);
    }
    summary.used = errors.size();
    if (errors.empty()) return summary;
    summary.mean = std::accumulate(errors.begin(), errors.end(), 0.0) /
                   static_cast<double>(errors.size());
    std::sort(errors.begin(), errors.end());
    summary.median = quantile(errors, 0.5);
    summary.q1 = quantile(errors, 0.25);
    summary.q3 = quantile(errors, 0.75);
    return summary;
}

std::string model_to_text(const LinearModel& model) {
    std::ostringstream out;
    out.precision(17);
    out << "model v1 n=" << model.rows << " seed=" << model.seed;
    if (model.ridge_used) out << " ridge=1";
    out << "\n";
    for (std::size_t j = 0; j < model.feature_names.size(); ++j)
        out << model.feature_names[j] << " " << model.coefficients[j] << "\n";
    out << "intercept " << model.coefficients.back() << "\n";
    return out.str();
}

LinearModel model_parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("model v1 ", 0) != 0)
        throw ParseError("expected 'model v1' header", 0);
    LinearModel model;
    {
        std::istringstream header(line.substr(9));
        std::string token;
        while (header >> token) {
            if (token.rfind("n=", 0) == 0) model.rows = std::stoull(token.substr(2));
            else if (token.rfind("seed=", 0) == 0) model.seed = std::stoull(token.substr(5));
            else if (token.rfind("ridge=", 0) == 0) model.ridge_used = token.substr(6) == "1";
            else throw ParseError("unknown header field in model file", 0);
        }
    }
    bool saw_intercept = false;
    double intercept = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string name;
        double value;
        if (!(fields >> name >> value)) throw ParseError("malformed coefficient line", 0);
        if (name == "intercept") {
            saw_intercept = true;
            intercept = value;
        } else {
            model.feature_names.push_back(name);
            model.coefficients.push_back(value);
        }
    }
    if (!saw_intercept) throw ParseError("model file lacks an intercept line", 0);
    model.coefficients.push_back(intercept);
    return model;
}

void write_model_file(const std::string& path, const LinearModel& model) {
    std::ofstream out(path);
    if (!out) throw ContractError("cannot write file: " + path);
    out << model_to_text(model);
}

LinearModel read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_parse(buffer.str());
}

std::string dataset_to_csv(const std::vector<DatasetRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t j = 0; j < kFeatureCount; ++j) out << kFeatureNames[j] << ",";
    out << "delta_true\n";
    for (const DatasetRow& row : rows) {
        for (double v : row.features.values) out << v << ",";
        out << row.delta_true << "\n";
    }
    return out.str();
}

std::vector<DatasetRow> dataset_parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty dataset", 0);
    std::vector<DatasetRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        DatasetRow row;
        std::istringstream fields(line);
        std::string cell;
        for (std::size_t j = 0; j < kFeatureCount; ++j) {
            if (!std::getline(fields, cell, ',')) throw ParseError("short dataset row", 0);
            row.features.values[j] = std::stod(cell);
        }
        if (!std::getline(fields, cell)) throw ParseError("dataset row lacks delta_true", 0);
        row.delta_true = std::stod(cell);
        rows.push_back(row);
    }
    return rows;
}

void write_dataset_file(const std::string& path, const std::vector<DatasetRow>& rows) {
    std::ofstream out(path);
    if (!out) throw ContractError("cannot write file: " + path);
    out << dataset_to_csv(rows);
}

std::vector<DatasetRow> read_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return dataset_parse_csv(buffer.str());
}

}  // namespace snt
