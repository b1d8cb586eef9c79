// Command-line surface for the self-nested tree toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 a guarded
// operation refused to run.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sntree/approximation.hpp"
#include "sntree/bottomup.hpp"
#include "sntree/counting.hpp"
#include "sntree/dag.hpp"
#include "sntree/edit_distance.hpp"
#include "sntree/error.hpp"
#include "sntree/predictor.hpp"
#include "sntree/rng.hpp"
#include "sntree/timing.hpp"
#include "sntree/tree.hpp"

namespace {

struct GenOptions {
    std::uint64_t size = 1;
    std::uint64_t seed = 0;
    bool self_nested = false;
    std::uint32_t height = 0;
    std::uint64_t degree = 0;
};

struct DistanceOptions {
    std::string method = "tree";
    std::string file_a, file_b;
};

struct BenchOptions {
    std::string experiment;
    std::vector<std::uint64_t> sizes;
    int reps = 5;
    std::uint64_t seed = 1;
    std::uint64_t degree = 4;
    std::string out;
};

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.empty() ? 0.0 : v[v.size() / 2];
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw snt::ContractError("cannot write file: " + path);
    out << text;
}

// Random self-nested tree with at least `target` vertices: raise the height
// until a draw at the requested degree is large enough.
snt::LinearDag self_nested_at_least(std::uint64_t target, std::uint64_t degree, snt::Rng& rng) {
    for (std::uint32_t h = 1; h <= 48; ++h) {
        for (int attempt = 0; attempt < 24; ++attempt) {
            snt::LinearDag dag = snt::random_linear_dag(h, degree, rng.next());
            std::uint64_t n = snt::linear_size(dag);
            if (n >= target && n <= target * 50) return dag;
        }
    }
    throw snt::ContractError("no self-nested instance found for the requested size");
}

int run_gen(const GenOptions& opt) {
    if (opt.self_nested) {
        snt::LinearDag dag = snt::random_linear_dag(opt.height, opt.degree, opt.seed);
        std::cout << snt::to_text(snt::expand_linear(dag)) << "\n";
    } else {
        std::cout << snt::to_text(snt::random_tree(opt.size, opt.seed)) << "\n";
    }
    return 0;
}

int run_distance(const DistanceOptions& opt) {
    snt::Tree a = snt::read_single_tree(opt.file_a);
    snt::Tree b = snt::read_single_tree(opt.file_b);
    std::uint64_t d = 0;
    if (opt.method == "tree")
        d = snt::edit_distance(a, b);
    else if (opt.method == "dag")
        d = snt::edit_distance_dag(snt::reduce(a), snt::reduce(b));
    else
        d = snt::brute_force_distance(a, b);
    std::cout << d << "\n";
    return 0;
}

int run_bench(const BenchOptions& opt) {
    std::ostringstream csv;
    snt::Rng rng(opt.seed);
    if (opt.experiment == "space") {
        csv << "kind,size_target,size_median,tree_bytes_median,dag_bytes_median,reps\n";
        for (std::uint64_t target : opt.sizes) {
            std::vector<double> rand_tree_bytes, rand_dag_bytes, rand_sizes;
            std::vector<double> sn_tree_bytes, sn_dag_bytes, sn_sizes;
            for (int r = 0; r < opt.reps; ++r) {
                snt::Tree t = snt::random_tree(target, rng.next());
                rand_sizes.push_back(static_cast<double>(t.size()));
                rand_tree_bytes.push_back(static_cast<double>(snt::to_text(t).size()));
                rand_dag_bytes.push_back(static_cast<double>(snt::dag_to_text(snt::reduce(t)).size()));

                snt::LinearDag dag = self_nested_at_least(target, opt.degree, rng);
                sn_sizes.push_back(static_cast<double>(snt::linear_size(dag)));
                sn_tree_bytes.push_back(
                    static_cast<double>(snt::to_text(snt::expand_linear(dag)).size()));
                sn_dag_bytes.push_back(
                    static_cast<double>(snt::dag_to_text(snt::from_linear(dag)).size()));
            }
            csv << "random," << target << "," << median_of(rand_sizes) << ","
                << median_of(rand_tree_bytes) << "," << median_of(rand_dag_bytes) << ","
                << opt.reps << "\n";
            csv << "selfnested," << target << "," << median_of(sn_sizes) << ","
                << median_of(sn_tree_bytes) << "," << median_of(sn_dag_bytes) << "," << opt.reps
                << "\n";
        }
    } else if (opt.experiment == "bottomup") {
        csv << "kind,size,ns_tree_median,ns_dag_median,reps\n";
        snt::BottomUpSpec<std::uint64_t> spec = snt::vertex_count_spec();
        for (std::uint64_t target : opt.sizes) {
            snt::Tree t = snt::random_tree(target, rng.next());
            snt::DagReduction d = snt::reduce(t);
            double tree_ns = snt::time_median_ns(
                [&] { snt::keep_alive(snt::eval_tree(spec, t)); }, opt.reps);
            double dag_ns = snt::time_median_ns(
                [&] { snt::keep_alive(snt::eval_dag(spec, d)); }, opt.reps);
            csv << "random," << t.size() << "," << tree_ns << "," << dag_ns << "," << opt.reps
                << "\n";

            snt::LinearDag linear = self_nested_at_least(target, opt.degree, rng);
            snt::Tree sn = snt::expand_linear(linear);
            snt::DagReduction dl = snt::from_linear(linear);
            double sn_tree_ns = snt::time_median_ns(
                [&] { snt::keep_alive(snt::eval_tree(spec, sn)); }, opt.reps);
            double sn_dag_ns = snt::time_median_ns(
                [&] { snt::keep_alive(snt::eval_dag(spec, dl)); }, opt.reps);
            csv << "selfnested," << sn.size() << "," << sn_tree_ns << "," << sn_dag_ns << ","
                << opt.reps << "\n";
        }
    } else {  // distance
        csv << "kind,size,ns_tree_median,ns_dag_median,reps\n";
        for (std::uint64_t target : opt.sizes) {
            snt::Tree a = snt::random_tree(target, rng.next());
            snt::Tree b = snt::random_tree(target, rng.next());
            snt::DagReduction da = snt::reduce(a), db = snt::reduce(b);
            double tree_ns = snt::time_median_ns(
                [&] { snt::keep_alive(snt::edit_distance(a, b)); }, opt.reps);
            double dag_ns = snt::time_median_ns(
                [&] { snt::keep_alive(snt::edit_distance_dag(da, db)); }, opt.reps);
            csv << "random," << target << "," << tree_ns << "," << dag_ns << "," << opt.reps
                << "\n";

            snt::LinearDag la = self_nested_at_least(target, opt.degree, rng);
            snt::LinearDag lb = self_nested_at_least(target, opt.degree, rng);
            snt::Tree sa = snt::expand_linear(la), sb = snt::expand_linear(lb);
            snt::DagReduction dla = snt::from_linear(la), dlb = snt::from_linear(lb);
            double sn_tree_ns = snt::time_median_ns(
                [&] { snt::keep_alive(snt::edit_distance(sa, sb)); }, opt.reps);
            double sn_dag_ns = snt::time_median_ns(
                [&] { snt::keep_alive(snt::edit_distance_dag(dla, dlb)); }, opt.reps);
            csv << "selfnested," << target << "," << sn_tree_ns << "," << sn_dag_ns << ","
                << opt.reps << "\n";
        }
    }
    if (opt.out.empty())
        std::cout << csv.str();
    else
        write_text(opt.out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-nested tree toolkit"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate a random tree");
    cmd_gen->add_option("--size", gen.size, "number of vertices");
    cmd_gen->add_option("--seed", gen.seed, "random seed")->required();
    cmd_gen->add_flag("--self-nested", gen.self_nested, "generate a random self-nested tree");
    cmd_gen->add_option("--height", gen.height, "height of the self-nested tree");
    cmd_gen->add_option("--degree", gen.degree, "outdegree bound of the self-nested tree");

    std::string file_a, file_b;
    auto* cmd_reduce = app.add_subcommand("reduce", "tree file -> DAG text");
    cmd_reduce->add_option("file", file_a)->required();
    auto* cmd_expand = app.add_subcommand("expand", "DAG file -> tree text");
    cmd_expand->add_option("file", file_a)->required();
    auto* cmd_canon = app.add_subcommand("canon", "canonical key of a tree file");
    cmd_canon->add_option("file", file_a)->required();
    auto* cmd_iso = app.add_subcommand("iso", "are two tree files isomorphic");
    cmd_iso->add_option("file_a", file_a)->required();
    cmd_iso->add_option("file_b", file_b)->required();
    auto* cmd_selfnested = app.add_subcommand("selfnested", "is the tree self-nested");
    cmd_selfnested->add_option("file", file_a)->required();

    std::string stat_fn = "vertex_count";
    bool stat_from_dag = false;
    auto* cmd_stat = app.add_subcommand("stat", "evaluate a bottom-up function");
    cmd_stat->add_option("--fn", stat_fn, "vertex_count | leaf_count | height | strahler")
        ->check(CLI::IsMember({"vertex_count", "leaf_count", "height", "strahler"}));
    cmd_stat->add_flag("--from-dag", stat_from_dag, "evaluate on the DAG reduction");
    cmd_stat->add_option("file", file_a)->required();

    DistanceOptions dist;
    auto* cmd_distance = app.add_subcommand("distance", "constrained edit distance");
    cmd_distance->add_option("--method", dist.method, "tree | dag | oracle")
        ->check(CLI::IsMember({"tree", "dag", "oracle"}));
    cmd_distance->add_option("file_a", dist.file_a)->required();
    cmd_distance->add_option("file_b", dist.file_b)->required();

    std::string report_path;
    auto* cmd_approx = app.add_subcommand("approximate", "self-nested approximation");
    cmd_approx->add_option("file", file_a)->required();
    cmd_approx->add_option("--report", report_path, "write a CSV report row to this path");

    bool count_eq = false, count_le = false;
    std::uint32_t opt_height = 1;
    std::uint64_t opt_degree = 1;
    auto* cmd_count = app.add_subcommand("count", "exact tree counts");
    cmd_count->add_flag("--eq", count_eq, "self-nested trees of height exactly H");
    cmd_count->add_flag("--le", count_le, "unordered trees of height <= H");
    cmd_count->add_option("--height", opt_height)->required();
    cmd_count->add_option("--degree", opt_degree)->required();

    std::uint32_t max_h = 5;
    std::uint64_t max_d = 4;
    auto* cmd_freq = app.add_subcommand("freq", "self-nested frequency table as CSV");
    cmd_freq->add_option("--maxH", max_h);
    cmd_freq->add_option("--maxD", max_d);

    auto* cmd_logcount = app.add_subcommand("logcount", "log-count and asymptotic equivalent");
    cmd_logcount->add_option("--height", opt_height)->required();
    cmd_logcount->add_option("--degree", opt_degree)->required();

    bool verify = false;
    std::uint64_t max_label = 0;
    auto* cmd_worst = app.add_subcommand("worstcase", "worst-case approximation distance");
    cmd_worst->add_option("--height", opt_height)->required();
    cmd_worst->add_option("--degree", opt_degree)->required();
    cmd_worst->add_flag("--verify", verify, "exhaustively verify the bound");
    cmd_worst->add_option("--max-label", max_label, "label bound for the search (default d+2)");

    BenchOptions bench;
    auto* cmd_bench = app.add_subcommand("bench", "benchmark CSV data");
    cmd_bench->add_option("experiment", bench.experiment, "space | bottomup | distance")
        ->required()
        ->check(CLI::IsMember({"space", "bottomup", "distance"}));
    cmd_bench->add_option("--sizes", bench.sizes, "instance sizes")->required()->delimiter(',');
    cmd_bench->add_option("--reps", bench.reps, "repetitions per size");
    cmd_bench->add_option("--seed", bench.seed);
    cmd_bench->add_option("--degree", bench.degree, "outdegree for self-nested instances");
    cmd_bench->add_option("--out", bench.out, "output CSV path");

    std::size_t pairs = 0;
    std::uint64_t size_lo = 20, size_hi = 200, seed = 1;
    std::string out_path, data_path, model_path, features_kind = "full";
    auto* cmd_dataset = app.add_subcommand("dataset", "generate a training dataset CSV");
    cmd_dataset->add_option("--pairs", pairs)->required();
    cmd_dataset->add_option("--size-lo", size_lo);
    cmd_dataset->add_option("--size-hi", size_hi);
    cmd_dataset->add_option("--seed", seed)->required();
    cmd_dataset->add_option("--out", out_path)->required();

    auto* cmd_train = app.add_subcommand("train", "fit the linear model");
    cmd_train->add_option("--data", data_path)->required();
    cmd_train->add_option("--out", out_path)->required();
    cmd_train->add_option("--features", features_kind, "full | plain")
        ->check(CLI::IsMember({"full", "plain"}));
    cmd_train->add_option("--seed", seed, "seed recorded in the model file");

    auto* cmd_predict = app.add_subcommand("predict", "predict distances for a dataset");
    cmd_predict->add_option("--model", model_path)->required();
    cmd_predict->add_option("--data", data_path)->required();
    cmd_predict->add_option("--out", out_path);

    auto* cmd_eval = app.add_subcommand("eval", "relative-error summary of a model");
    cmd_eval->add_option("--model", model_path)->required();
    cmd_eval->add_option("--data", data_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*cmd_gen) {
            if (gen.self_nested && (cmd_gen->count("--height") == 0 || cmd_gen->count("--degree") == 0)) {
                std::cerr << "gen --self-nested requires --height and --degree\n";
                return 1;
            }
            if (!gen.self_nested && cmd_gen->count("--size") == 0) {
                std::cerr << "gen requires --size\n";
                return 1;
            }
            return run_gen(gen);
        }
        if (*cmd_reduce) {
            std::cout << snt::dag_to_text(snt::reduce(snt::read_single_tree(file_a)));
            return 0;
        }
        if (*cmd_expand) {
            std::cout << snt::to_text(snt::expand_root(snt::read_dag_file(file_a))) << "\n";
            return 0;
        }
        if (*cmd_canon) {
            std::cout << snt::canonical_key(snt::read_single_tree(file_a)) << "\n";
            return 0;
        }
        if (*cmd_iso) {
            bool iso = snt::is_isomorphic(snt::read_single_tree(file_a),
                                          snt::read_single_tree(file_b));
            std::cout << (iso ? "true" : "false") << "\n";
            return 0;
        }
        if (*cmd_selfnested) {
            std::cout << (snt::is_linear(snt::reduce(snt::read_single_tree(file_a))) ? "true"
                                                                                     : "false")
                      << "\n";
            return 0;
        }
        if (*cmd_stat) {
            snt::Tree t = snt::read_single_tree(file_a);
            snt::BottomUpSpec<std::uint64_t> spec =
                stat_fn == "leaf_count" ? snt::leaf_count_spec()
                : stat_fn == "height"   ? snt::height_spec()
                : stat_fn == "strahler" ? snt::strahler_spec()
                                        : snt::vertex_count_spec();
            std::uint64_t value = stat_from_dag ? snt::eval_dag(spec, snt::reduce(t))
                                                : snt::eval_tree(spec, t);
            std::cout << value << "\n";
            return 0;
        }
        if (*cmd_distance) return run_distance(dist);
        if (*cmd_approx) {
            snt::Tree t = snt::read_single_tree(file_a);
            snt::ApproximationReport report = snt::approximation_report(t);
            std::cout << snt::to_text(snt::approximate_tree(t)) << "\n";
            std::ostringstream csv;
            csv << "size_in,size_out,delta,height\n"
                << report.size_in << "," << report.size_out << "," << report.delta << ","
                << report.height << "\n";
            if (report_path.empty())
                std::cout << csv.str();
            else
                write_text(report_path, csv.str());
            return 0;
        }
        if (*cmd_count) {
            if (count_eq == count_le) {
                std::cerr << "count needs exactly one of --eq or --le\n";
                return 1;
            }
            snt::BigUint n = count_eq ? snt::count_self_nested_eq(opt_height, opt_degree)
                                      : snt::count_unordered_le(opt_height, opt_degree);
            std::cout << n.to_string() << "\n";
            return 0;
        }
        if (*cmd_freq) {
            std::cout << "H,d,numerator,denominator,value\n";
            char buffer[64];
            for (std::uint32_t h = 2; h <= max_h; ++h) {
                for (std::uint64_t d = 2; d <= max_d; ++d) {
                    snt::FrequencyCell cell = snt::self_nested_frequency(h, d);
                    std::snprintf(buffer, sizeof buffer, "%.6e", cell.value);
                    std::cout << h << "," << d << "," << cell.numerator.to_string() << ","
                              << cell.denominator.to_string() << "," << buffer << "\n";
                }
            }
            return 0;
        }
        if (*cmd_logcount) {
            std::cout << "log_count " << snt::log_count_self_nested(opt_height, opt_degree) << "\n"
                      << "asymptotic_equivalent " << snt::asymptotic_equivalent(opt_height, opt_degree)
                      << "\n";
            return 0;
        }
        if (*cmd_worst) {
            std::uint64_t bound = snt::worst_case_bound(opt_height, opt_degree);
            std::cout << "bound " << bound << "\n";
            if (verify) {
                if (max_label == 0) max_label = opt_degree + 2;
                snt::Tree t = snt::build_worst_case_tree(opt_height, opt_degree);
                auto [found, argmin] =
                    snt::min_self_nested_distance(t, opt_height + 1, max_label);
                std::cout << "min " << found << "\n"
                          << "match " << (found == bound ? "true" : "false") << "\n";
            }
            return 0;
        }
        if (*cmd_bench) return run_bench(bench);
        if (*cmd_dataset) {
            write_dataset_file(out_path, snt::generate_dataset(pairs, size_lo, size_hi, seed));
            return 0;
        }
        if (*cmd_train) {
            std::vector<snt::DatasetRow> rows = snt::read_dataset_file(data_path);
            snt::LinearModel model =
                features_kind == "plain" ? snt::fit_ols(rows, snt::plain_feature_subset())
                                         : snt::fit_ols(rows);
            model.seed = seed;
            snt::write_model_file(out_path, model);
            return 0;
        }
        if (*cmd_predict) {
            snt::LinearModel model = snt::read_model_file(model_path);
            std::vector<snt::DatasetRow> rows = snt::read_dataset_file(data_path);
            std::ostringstream out;
            out.precision(17);
            out << "predicted\n";
            for (const auto& row : rows) out << snt::predict(model, row.features) << "\n";
            if (out_path.empty())
                std::cout << out.str();
            else
                write_text(out_path, out.str());
            return 0;
        }
        if (*cmd_eval) {
            snt::LinearModel model = snt::read_model_file(model_path);
            snt::ErrorSummary s =
                snt::evaluate_model(model, snt::read_dataset_file(data_path));
            std::cout << "mean " << s.mean << "\nmedian " << s.median << "\nq1 " << s.q1
                      << "\nq3 " << s.q3 << "\nused " << s.used << "\nexcluded_zero_true "
                      << s.excluded_zero_true << "\n";
            return 0;
        }
    } catch (const snt::GuardError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const snt::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const snt::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
