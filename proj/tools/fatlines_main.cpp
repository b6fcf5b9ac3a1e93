// Command-line surface: dim, scan, cremona, triple, waldschmidt, verify,
// cache-audit. Defaults can come from FATLINES_PRIME / FATLINES_SEEDS;
// explicit flags win.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fatlines/cli.hpp"
#include "fatlines/version.hpp"

namespace {

struct GlobalArgs {
    std::string prime_str;
    std::string seeds_str;
    std::string format_str = "text";
    std::string cache_dir;
    std::uint64_t budget_cols = fatlines::kDefaultBudgetCols;
};

int build_config(const GlobalArgs& args, fatlines::RunConfig& config,
                 std::ostream& err) {
    try {
        if (!args.prime_str.empty()) {
            config.prime = fatlines::PrimeModulus{std::stoull(args.prime_str)}.value();
        }
        if (!args.seeds_str.empty()) {
            config.seeds = fatlines::parse_seeds(args.seeds_str);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return fatlines::kExitUsage;
    }
    const auto format = fatlines::parse_format(args.format_str);
    if (!format) {
        err << "error: unknown format '" << args.format_str
            << "' (use text, json or csv)\n";
        return fatlines::kExitUsage;
    }
    config.format = *format;
    config.cache_dir = args.cache_dir;
    config.budget_cols = args.budget_cols;
    return fatlines::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for linear systems of surfaces in "
                 "P^3 with multiplicities along general lines"};
    app.set_version_flag("--version", fatlines::kToolVersion);
    app.require_subcommand(1);

    GlobalArgs global;
    app.add_option("--prime", global.prime_str, "field characteristic (prime >= 5)")
        ->envname("FATLINES_PRIME");
    app.add_option("--seeds", global.seeds_str, "comma-separated RNG seeds")
        ->envname("FATLINES_SEEDS");
    app.add_option("--format", global.format_str, "output format: text, json or csv");
    app.add_option("--cache-dir", global.cache_dir, "directory for cached results");
    app.add_option("--budget-cols", global.budget_cols,
                   "largest monomial basis the tool will eliminate");

    // dim
    auto* dim = app.add_subcommand("dim", "dimensions of one system L_d(m_1..m_s)");
    unsigned dim_degree = 0;
    std::string dim_mults;
    dim->add_option("--degree", dim_degree, "degree d")->required();
    dim->add_option("--mults", dim_mults, "multiplicities, e.g. 3^6,2")->required();

    // scan
    auto* scan = app.add_subcommand("scan", "sweep degrees for one multiplicity pattern");
    unsigned scan_max_degree = 0;
    std::string scan_mults;
    unsigned scan_count = 0;
    unsigned scan_mult = 0;
    scan->add_option("--max-degree", scan_max_degree, "largest degree")->required();
    scan->add_option("--mults", scan_mults, "multiplicities, e.g. 3^6,2");
    scan->add_option("--count", scan_count, "number of lines (with --mult)");
    scan->add_option("--mult", scan_mult, "uniform multiplicity (with --count)");

    // cremona
    auto* cremona = app.add_subcommand("cremona", "apply a lattice involution to a class");
    std::string cremona_map;
    std::string cremona_class;
    bool cremona_drop = false;
    cremona->add_option("--map", cremona_map, "cubo or todd")->required();
    cremona->add_option("--class", cremona_class, "class string d;m1,..[;t1,t2]")
        ->required();
    cremona->add_flag("--drop-auxiliary", cremona_drop,
                      "also print the projection without transversal classes");

    // triple
    auto* triple = app.add_subcommand("triple", "triple intersection product");
    std::string triple_model;
    std::vector<std::string> triple_classes;
    triple->add_option("--model", triple_model, "cubo, todd or lines")->required();
    triple->add_option("--class", triple_classes, "three class strings")
        ->required()
        ->expected(3);

    // waldschmidt
    auto* wald = app.add_subcommand("waldschmidt", "initial-degree samples and bounds");
    unsigned wald_s = 0;
    unsigned wald_m_max = 3;
    wald->add_option("--lines,-s", wald_s, "number of general lines")->required();
    wald->add_option("--m-max", wald_m_max, "largest symbolic power to sample");

    // verify
    auto* verify = app.add_subcommand("verify", "run named reproduction checks");
    std::vector<std::string> verify_names;
    verify->add_option("checks", verify_names,
                       "check names (prefix* allowed); all when omitted");

    // cache-audit
    auto* audit = app.add_subcommand("cache-audit",
                                     "recompute sampled cache entries and compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return fatlines::kExitOk;
    } catch (const CLI::CallForVersion&) {
        std::cout << fatlines::kToolVersion << "\n";
        return fatlines::kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fatlines::kExitUsage;
    }

    fatlines::RunConfig config;
    if (const int rc = build_config(global, config, std::cerr); rc != 0) return rc;

    try {
        if (dim->parsed()) {
            std::vector<unsigned> mults;
            try {
                mults = fatlines::parse_mults(dim_mults);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return fatlines::kExitUsage;
            }
            return fatlines::cmd_dim(dim_degree, mults, config, std::cout, std::cerr);
        }
        if (scan->parsed()) {
            std::vector<unsigned> mults;
            try {
                if (!scan_mults.empty()) {
                    mults = fatlines::parse_mults(scan_mults);
                } else if (scan_count > 0 && scan_mult > 0) {
                    mults.assign(scan_count, scan_mult);
                } else {
                    std::cerr << "error: scan needs --mults or --count with --mult\n";
                    return fatlines::kExitUsage;
                }
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return fatlines::kExitUsage;
            }
            return fatlines::cmd_scan(scan_max_degree, mults, config, std::cout,
                                      std::cerr);
        }
        if (cremona->parsed()) {
            return fatlines::cmd_cremona(cremona_map, cremona_class, cremona_drop,
                                         config, std::cout, std::cerr);
        }
        if (triple->parsed()) {
            return fatlines::cmd_triple(triple_model, triple_classes, config,
                                        std::cout, std::cerr);
        }
        if (wald->parsed()) {
            return fatlines::cmd_waldschmidt(wald_s, wald_m_max, config, std::cout,
                                             std::cerr);
        }
        if (verify->parsed()) {
            return fatlines::cmd_verify(verify_names, config, std::cout, std::cerr);
        }
        if (audit->parsed()) {
            return fatlines::cmd_cache_audit(config, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return fatlines::kExitInternal;
    }
    return fatlines::kExitUsage;
}
