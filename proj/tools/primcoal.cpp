#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "primcoal/primcoal.h"

namespace {

const std::map<std::string, std::string> kDescriptions{
    {"simulate-additive", "Additive coalescent masses from thinned conditioned Poisson walks (coupled lambda grid)."},
    {"simulate-multiplicative", "Critical random graph cluster masses and surpluses via the walk or graph route."},
    {"compare-orders", "Prim vs standard exploration: exact four-node probabilities and excursion-length agreement."},
    {"verify-invariants", "Deterministic suite: Prim intervals, excursions = components, Psi lemma, Z/Y identity, "
                          "surplus identity."},
    {"limit-compare", "Two-sample KS test of the largest rescaled cluster against the Brownian limit."},
    {"augmented", "TV test of the (sizes, surpluses) law: walk route vs graph route."},
    {"ml-oracle", "TV tests of Marcus-Lushnikov dynamics against G(n,p) and the Pitman forest."},
    {"trace", "CSV traces of the rescaled walk, its Psi reflection and running minimum per lambda."},
};

const std::map<std::string, std::string> kColumns{
    {"simulate-additive", "masses.csv: replicate,lambda,rank,mass"},
    {"simulate-multiplicative", "components.csv: replicate,lambda,rank,mass,surplus"},
    {"compare-orders", "orders.csv: replicate,lambda,order,z (Z(0..n+1) ':'-joined)\n"
                       "  order_laws.csv: lambda,tv_distance,prim_support,standard_support"},
    {"verify-invariants", "invariants.csv: check,cases,violations"},
    {"limit-compare", "samples.csv: replicate,discrete,limit"},
    {"augmented", "outcomes.csv: lambda,outcome,walk,graph (outcome = size:surplus pairs ';'-joined)"},
    {"ml-oracle", "outcomes.csv: kernel,parameter,outcome,marcus_lushnikov,reference (outcome = sizes ':'-joined)"},
    {"trace", "trace_r<replicate>_l<lambda index>.csv: x,value,psi_value,running_min"},
};

struct Options {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t replicates = 0, workers = 0, n = 0, top = 0;
    std::vector<double> lambda;
    std::string route, field, coalescent;
    double dx = 0, horizon = -1, alpha = 0, tv_threshold = 0, time = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int run(const std::string& kind, const Options& o, CLI::App& sub) {
    nlohmann::json base = nlohmann::json::object();
    if (!o.config.empty()) {
        try {
            base = nlohmann::json::parse(read_file(o.config));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
        if (base.contains("kind") && base["kind"] != kind) {
            std::cerr << "error: config kind '" << base["kind"].get<std::string>() << "' does not match subcommand '"
                      << kind << "'\n";
            return 2;
        }
    }
    nlohmann::json over{{"kind", kind}};
    auto given = [&](const char* name) { return sub.count(name) > 0; };
    if (given("--seed")) over["seed"] = o.seed;
    if (given("--replicates")) over["replicates"] = o.replicates;
    if (given("--workers")) over["workers"] = o.workers;
    if (given("--n")) over["n"] = o.n;
    if (given("--lambda")) over["lambda"] = o.lambda;
    if (given("--route")) over["route"] = o.route;
    if (given("--field")) over["field"] = o.field;
    if (given("--coalescent")) over["coalescent"] = o.coalescent;
    if (given("--dx")) over["dx"] = o.dx;
    if (given("--horizon")) over["horizon"] = o.horizon;
    if (given("--alpha")) over["alpha"] = o.alpha;
    if (given("--tv-threshold")) over["tv_threshold"] = o.tv_threshold;
    if (given("--time")) over["time"] = o.time;
    if (given("--top")) over["top"] = o.top;

    pc_experiment* exp = nullptr;
    if (pc_experiment_create(base.dump().c_str(), over.dump().c_str(), &exp) != PC_OK) {
        std::cerr << "error: " << pc_last_error() << '\n';
        return 2;
    }
    const pc_status s = pc_experiment_run(exp, o.out.empty() ? nullptr : o.out.c_str());
    if (s != PC_OK) {
        std::cerr << "error (" << pc_status_string(s) << "): " << pc_last_error() << '\n';
        pc_experiment_destroy(exp);
        return 3;
    }
    const auto manifest = nlohmann::json::parse(pc_experiment_summary_json(exp));
    for (const auto& v : manifest["verdicts"]) {
        std::cout << (v["passed"].get<bool>() ? "PASS " : "FAIL ") << v["description"].get<std::string>()
                  << "  statistic=" << v["statistic"].dump() << " threshold=" << v["threshold"].dump() << '\n';
    }
    if (!o.out.empty()) std::cout << "wrote " << o.out << "/manifest.json\n";
    const int passed = pc_experiment_passed(exp);
    pc_experiment_destroy(exp);
    return passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"primcoal: Prim-order constructions of the additive and multiplicative coalescents"};
    app.set_version_flag("--version", std::string(pc_version()));
    app.require_subcommand(1);
    app.footer("Exit status: 0 iff every verdict passes; 1 on a failed verdict; 2 on an invalid config; "
               "3 on a runtime error.\nIdentical config and seed give byte-identical outputs for any --workers.");

    Options o;
    std::string chosen;
    for (std::size_t i = 0; i < pc_experiment_kind_count(); ++i) {
        const std::string kind = pc_experiment_kind(i);
        auto* sub = app.add_subcommand(kind, kDescriptions.at(kind));
        sub->footer("Output CSV columns:\n  " + kColumns.at(kind) + "\n  manifest.json: resolved config, config_hash, "
                    "seed, version, files, verdicts");
        sub->add_option("--config", o.config, "JSON config file (flags override its keys)")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--replicates", o.replicates, "number of replicates");
        sub->add_option("--workers", o.workers, "worker threads (0: all cores); never changes outputs");
        sub->add_option("--out", o.out, "output directory for CSVs and manifest.json");
        sub->add_option("--n", o.n, "size parameter n");
        sub->add_option("--lambda", o.lambda, "lambda value or grid (comma-separated)")->delimiter(',');
        sub->add_option("--route", o.route, "walk | graph")->check(CLI::IsMember({"walk", "graph"}));
        sub->add_option("--field", o.field, "full | sparse")->check(CLI::IsMember({"full", "sparse"}));
        sub->add_option("--coalescent", o.coalescent, "multiplicative | additive")
            ->check(CLI::IsMember({"multiplicative", "additive"}));
        sub->add_option("--dx", o.dx, "grid step of the limit paths");
        sub->add_option("--horizon", o.horizon, "horizon of the parabolic path (0: max(10, 2 lambda + 10))");
        sub->add_option("--alpha", o.alpha, "KS significance level");
        sub->add_option("--tv-threshold", o.tv_threshold, "total-variation acceptance threshold");
        sub->add_option("--time", o.time, "matched time for the additive Marcus-Lushnikov oracle");
        sub->add_option("--top", o.top, "number of largest clusters written per replicate and lambda");
        sub->callback([&chosen, kind] { chosen = kind; });
    }
    CLI11_PARSE(app, argc, argv);
    for (auto* sub : app.get_subcommands())
        if (sub->get_name() == chosen) return run(chosen, o, *sub);
    return 2;
}
