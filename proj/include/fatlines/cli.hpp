#pragma once

#include <array>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fatlines/cache.hpp"
#include "fatlines/json_io.hpp"
#include "fatlines/verifier.hpp"
#include "fatlines/waldschmidt.hpp"

namespace fatlines {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSpecial = 3;  // dim only: the system is special

enum class OutputFormat { Text, Json, Csv };

struct RunConfig {
    std::uint32_t prime = PrimeModulus::kDefault;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    OutputFormat format = OutputFormat::Text;
    std::string cache_dir;  // empty disables caching
    std::uint64_t budget_cols = kDefaultBudgetCols;
};

inline std::optional<OutputFormat> parse_format(const std::string& s) {
    if (s == "text") return OutputFormat::Text;
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    return std::nullopt;
}

inline std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string item = text.substr(pos, next - pos);
        std::size_t used = 0;
        try {
            seeds.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad seed '" + item + "'");
        }
        pos = next + 1;
    }
    if (seeds.empty()) throw std::invalid_argument("need at least one seed");
    return seeds;
}

/// "d;m1,...,mk[;t1,t2]" meaning dH - sum m_i E_i - sum t_j T_j. Positive
/// entries are degrees and multiplicities, matching how the systems are
/// written.
struct ClassSpec {
    long long degree = 0;
    std::vector<long long> mults;
    std::vector<long long> transversals;
};

inline ClassSpec parse_class_string(const std::string& text) {
    std::vector<std::string> sections;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(';', pos);
        sections.push_back(text.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (sections.empty() || sections.size() > 3) {
        throw std::invalid_argument("class string needs 'd;m1,..[;t1,t2]'");
    }
    auto parse_ll = [](const std::string& item) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty()) {
            throw std::invalid_argument("bad integer '" + item + "' in class string");
        }
        return v;
    };
    auto parse_list = [&](const std::string& s) {
        std::vector<long long> out;
        std::size_t p = 0;
        while (p < s.size()) {
            std::size_t n = s.find(',', p);
            if (n == std::string::npos) n = s.size();
            out.push_back(parse_ll(s.substr(p, n - p)));
            p = n + 1;
        }
        return out;
    };

    ClassSpec spec;
    spec.degree = parse_ll(sections[0]);
    if (sections.size() > 1) spec.mults = parse_list(sections[1]);
    if (sections.size() > 2) spec.transversals = parse_list(sections[2]);
    return spec;
}

inline DivisorClass to_divisor_class(const ClassSpec& spec, BlowupModel model) {
    if (spec.mults.size() != model.line_count()) {
        throw std::invalid_argument(
            "class has " + std::to_string(spec.mults.size()) +
            " multiplicities but the model has " +
            std::to_string(model.line_count()) + " lines");
    }
    if (spec.transversals.size() > model.transversal_count()) {
        throw std::invalid_argument("class has transversal entries the model lacks");
    }
    std::vector<long long> coeffs;
    coeffs.reserve(model.basis_size());
    coeffs.push_back(spec.degree);
    for (long long m : spec.mults) coeffs.push_back(-m);
    for (unsigned j = 0; j < model.transversal_count(); ++j) {
        coeffs.push_back(j < spec.transversals.size() ? -spec.transversals[j] : 0);
    }
    return DivisorClass(model, std::move(coeffs));
}

/// Inverse of parse_class_string/to_divisor_class; the cubo-cubic form keeps
/// its transversal section so piping the output back loses nothing.
inline std::string format_class_string(const DivisorClass& cls) {
    std::string out = std::to_string(cls.h_coefficient()) + ";";
    const BlowupModel& model = cls.model();
    for (unsigned i = 1; i <= model.line_count(); ++i) {
        if (i > 1) out += ',';
        out += std::to_string(-cls.coeff(i));
    }
    if (model.transversal_count() > 0) {
        out += ';';
        for (unsigned j = 0; j < model.transversal_count(); ++j) {
            if (j > 0) out += ',';
            out += std::to_string(-cls.coeff(model.line_count() + 1 + j));
        }
    }
    return out;
}

namespace detail {

inline std::unique_ptr<FileCache> open_cache(const RunConfig& config) {
    if (config.cache_dir.empty()) return nullptr;
    return std::make_unique<FileCache>(config.cache_dir);
}

inline std::string csv_quote(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
    std::string out;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(seeds[i]);
    }
    return out;
}

inline constexpr const char* kScanCsvHeader =
    "degree,mults,virtual,expected,actual_min,actual_max,special,seeds,prime";

inline std::string scan_csv_row(const DimensionReport& r) {
    const auto minmax = std::minmax_element(r.actual_per_seed.begin(),
                                            r.actual_per_seed.end());
    std::ostringstream row;
    row << r.system.degree() << ',' << csv_quote(format_mults(r.system.mults()))
        << ',' << r.virtual_dim << ',' << r.expected_dim << ',' << *minmax.first
        << ',' << *minmax.second << ',' << (r.special ? "true" : "false") << ','
        << csv_quote(join_seeds(r.seeds)) << ',' << r.prime;
    return row.str();
}

inline void print_dimension_text(const DimensionReport& r, std::ostream& out) {
    out << "system            " << system_label(r.system) << "\n";
    out << "prime             " << r.prime << "\n";
    out << "seeds             " << join_seeds(r.seeds) << "\n";
    out << "virtual           " << r.virtual_dim << "\n";
    out << "expected          " << r.expected_dim << "\n";
    out << "actual per seed   ";
    for (std::size_t i = 0; i < r.actual_per_seed.size(); ++i) {
        if (i) out << ' ';
        out << r.actual_per_seed[i];
    }
    out << "\n";
    out << "consensus actual  " << r.consensus_actual << "\n";
    if (r.special) {
        out << "verdict           SPECIAL (actual " << r.consensus_actual
            << " > expected " << r.expected_dim << ")\n";
    } else {
        out << "verdict           non-special\n";
    }
    for (const auto& caveat : r.caveats) out << "caveat            " << caveat << "\n";
}

}  // namespace detail

/// `dim`: virtual/expected/actual dimensions and the speciality verdict for
/// one system. Exit code 3 signals a special system to scripts.
inline int cmd_dim(unsigned degree, const std::vector<unsigned>& mults,
                   const RunConfig& config, std::ostream& out,
                   std::ostream& err) {
    std::optional<FatFlatSystem> sys;
    try {
        sys.emplace(degree, mults);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (binomial(degree + 3ull, 3) > config.budget_cols) {
        err << "error: degree " << degree << " needs "
            << binomial(degree + 3ull, 3) << " columns (budget "
            << config.budget_cols << ")\n";
        return kExitUsage;
    }

    const auto cache = detail::open_cache(config);
    const DimensionReport report =
        analyze(*sys, PrimeModulus{config.prime}, config.seeds, cache.get());

    switch (config.format) {
        case OutputFormat::Text:
            detail::print_dimension_text(report, out);
            break;
        case OutputFormat::Json:
            out << to_json(report).dump(2) << "\n";
            break;
        case OutputFormat::Csv:
            out << detail::kScanCsvHeader << "\n"
                << detail::scan_csv_row(report) << "\n";
            break;
    }
    return report.special ? kExitSpecial : kExitOk;
}

/// `scan`: one report per degree up to max_degree for a fixed multiplicity
/// pattern; special rows are listed first in the text summary.
inline int cmd_scan(unsigned max_degree, const std::vector<unsigned>& mults,
                    const RunConfig& config, std::ostream& out,
                    std::ostream& err) {
    if (mults.empty()) {
        err << "error: scan needs a multiplicity pattern\n";
        return kExitUsage;
    }
    unsigned min_degree = 0;
    for (unsigned m : mults) min_degree = std::max(min_degree, m);
    if (min_degree > max_degree) {
        err << "error: max degree " << max_degree
            << " is below the largest multiplicity " << min_degree << "\n";
        return kExitUsage;
    }

    const auto cache = detail::open_cache(config);
    std::vector<DimensionReport> reports;
    std::vector<std::string> notes;
    for (unsigned d = min_degree; d <= max_degree; ++d) {
        if (binomial(d + 3ull, 3) > config.budget_cols) {
            notes.push_back("degree " + std::to_string(d) +
                            " skipped: over column budget");
            continue;
        }
        reports.push_back(analyze(FatFlatSystem(d, mults),
                                  PrimeModulus{config.prime}, config.seeds,
                                  cache.get()));
    }

    switch (config.format) {
        case OutputFormat::Text: {
            out << "degree  virtual  expected  actual  special\n";
            for (const auto& r : reports) {
                out << std::setw(6) << r.system.degree() << "  " << std::setw(7)
                    << r.virtual_dim << "  " << std::setw(8) << r.expected_dim
                    << "  " << std::setw(6) << r.consensus_actual << "  "
                    << (r.special ? "SPECIAL" : "-") << "\n";
            }
            out << "\nsummary (special systems first):\n";
            for (const auto& r : reports) {
                if (r.special) out << "  SPECIAL " << system_label(r.system) << "\n";
            }
            for (const auto& r : reports) {
                if (!r.special) out << "  -       " << system_label(r.system) << "\n";
            }
            for (const auto& n : notes) out << "note: " << n << "\n";
            break;
        }
        case OutputFormat::Json: {
            ordered_json j =
                report_envelope("scan", config.prime, config.seeds);
            j["mults"] = mults;
            j["reports"] = ordered_json::array();
            for (const auto& r : reports) j["reports"].push_back(to_json(r));
            j["specials"] = ordered_json::array();
            for (const auto& r : reports) {
                if (r.special) j["specials"].push_back(system_label(r.system));
            }
            j["notes"] = notes;
            out << j.dump(2) << "\n";
            break;
        }
        case OutputFormat::Csv: {
            out << detail::kScanCsvHeader << "\n";
            for (const auto& r : reports) out << detail::scan_csv_row(r) << "\n";
            for (const auto& n : notes) err << "note: " << n << "\n";
            break;
        }
    }
    return kExitOk;
}

/// `cremona`: image of a class under one of the two lattice involutions.
/// Text output is the class string itself so results can be piped back in.
inline int cmd_cremona(const std::string& map_name, const std::string& class_str,
                       bool drop_aux, const RunConfig& config, std::ostream& out,
                       std::ostream& err) {
    try {
        const ClassSpec spec = parse_class_string(class_str);
        DivisorClass image = [&] {
            if (map_name == "cubo") {
                return gamma_cubo(to_divisor_class(spec, BlowupModel::cubo_cubic()));
            }
            if (map_name == "todd") {
                if (!spec.transversals.empty()) {
                    throw std::invalid_argument(
                        "the todd model has no transversal coefficients");
                }
                return gamma_todd(to_divisor_class(spec, BlowupModel::todd()));
            }
            throw std::invalid_argument("unknown map '" + map_name +
                                        "' (use cubo or todd)");
        }();

        if (config.format == OutputFormat::Json) {
            ordered_json j = report_envelope("cremona", config.prime, config.seeds);
            j["map"] = map_name;
            j["input"] = class_str;
            j["image"] = to_json(image);
            j["image_class_string"] = format_class_string(image);
            if (drop_aux && map_name == "cubo") {
                const AuxiliaryProjection proj = drop_auxiliary(image);
                j["projected"] = to_json(proj.projected);
                j["projected_dropped_nonzero"] = proj.dropped_nonzero;
            }
            out << j.dump(2) << "\n";
        } else {
            out << format_class_string(image) << "\n";
            err << "image: " << image.pretty() << "\n";
            if (drop_aux && map_name == "cubo") {
                const AuxiliaryProjection proj = drop_auxiliary(image);
                out << format_class_string(proj.projected) << "\n";
                if (proj.dropped_nonzero) {
                    err << "warning: projection dropped nonzero transversal "
                           "coefficients\n";
                }
            }
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

/// `triple`: triple intersection product of three classes on one model.
inline int cmd_triple(const std::string& model_name,
                      const std::vector<std::string>& class_strs,
                      const RunConfig& config, std::ostream& out,
                      std::ostream& err) {
    try {
        if (class_strs.size() != 3) {
            throw std::invalid_argument("triple needs exactly three classes");
        }
        std::array<ClassSpec, 3> specs;
        for (std::size_t i = 0; i < 3; ++i) {
            specs[i] = parse_class_string(class_strs[i]);
        }
        const BlowupModel model = [&] {
            if (model_name == "cubo") return BlowupModel::cubo_cubic();
            if (model_name == "todd") return BlowupModel::todd();
            if (model_name == "lines") {
                if (specs[0].mults.empty()) {
                    throw std::invalid_argument(
                        "lines model needs at least one multiplicity");
                }
                return BlowupModel::lines(
                    static_cast<unsigned>(specs[0].mults.size()));
            }
            throw std::invalid_argument("unknown model '" + model_name +
                                        "' (use cubo, todd or lines)");
        }();
        const DivisorClass a = to_divisor_class(specs[0], model);
        const DivisorClass b = to_divisor_class(specs[1], model);
        const DivisorClass c = to_divisor_class(specs[2], model);
        const long long value = triple_product(a, b, c);

        if (config.format == OutputFormat::Json) {
            ordered_json j = report_envelope("triple", config.prime, config.seeds);
            j["model"] = model_name;
            j["classes"] = class_strs;
            j["value"] = value;
            out << j.dump(2) << "\n";
        } else {
            out << value << "\n";
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

/// `waldschmidt`: sampled initial-degree ratios with bounds and the known or
/// conjectured constant.
inline int cmd_waldschmidt(unsigned s, unsigned m_max, const RunConfig& config,
                           std::ostream& out, std::ostream& err) {
    if (s < 1) {
        err << "error: need at least one line\n";
        return kExitUsage;
    }
    const auto cache = detail::open_cache(config);
    const WaldschmidtReport report =
        bound_report(s, m_max, PrimeModulus{config.prime}, config.seeds,
                     config.budget_cols, cache.get());

    if (config.format == OutputFormat::Json) {
        out << to_json(report).dump(2) << "\n";
        return kExitOk;
    }
    if (config.format == OutputFormat::Csv) {
        out << "s,m,alpha,ratio,exact,conjectured\n";
        for (const auto& smp : report.samples) {
            out << report.s << ',' << smp.m << ',' << smp.alpha << ','
                << smp.ratio.str() << ','
                << (report.exact ? report.exact->str() : "") << ',';
            if (report.conjectured_rational) {
                out << report.conjectured_rational->str();
            } else if (report.conjectured_root_value) {
                out << *report.conjectured_root_value;
            }
            out << "\n";
        }
        return kExitOk;
    }

    out << "lines             " << report.s << "\n";
    out << "prime             " << report.prime << "\n";
    for (const auto& smp : report.samples) {
        out << "sample            m=" << smp.m << "  alpha=" << smp.alpha
            << "  ratio=" << smp.ratio.str() << "\n";
    }
    if (report.exact) out << "exact             " << report.exact->str() << "\n";
    if (report.upper_bound) {
        out << "upper bound       " << report.upper_bound->value.str()
            << (report.upper_bound->certified ? " (certified)" : " (evidence)")
            << "  [" << report.upper_bound->source << "]\n";
    }
    if (report.lower_bound) {
        out << "lower bound       " << report.lower_bound->value.str()
            << (report.lower_bound->certified ? " (certified)" : " (evidence)")
            << "  [" << report.lower_bound->source << "]\n";
    }
    if (report.conjectured_rational) {
        out << "conjectured       " << report.conjectured_rational->str() << "\n";
    }
    if (report.conjectured_root_value) {
        out << "conjectured       " << std::setprecision(15)
            << *report.conjectured_root_value << "\n";
    }
    for (const auto& n : report.notes) out << "note              " << n << "\n";
    for (const auto& c : report.caveats) out << "caveat            " << c << "\n";
    return kExitOk;
}

/// `verify`: run named reproduction checks; exit 0 iff everything passed.
inline int cmd_verify(const std::vector<std::string>& names,
                      const RunConfig& config, std::ostream& out,
                      std::ostream& err) {
    const auto cache = detail::open_cache(config);
    VerifyOptions opt;
    opt.prime = PrimeModulus{config.prime};
    opt.seeds = config.seeds;
    opt.budget_cols = config.budget_cols;
    opt.cache = cache.get();

    std::vector<CheckResult> results;
    try {
        results = run_checks(names, opt);
    } catch (const UnknownCheckError& e) {
        err << "error: " << e.what() << "\n";
        err << "available checks:";
        for (const auto& n : all_check_names()) err << " " << n;
        err << "\n";
        return kExitUsage;
    }

    bool all_passed = true;
    for (const auto& r : results) all_passed = all_passed && r.passed;

    if (config.format == OutputFormat::Json) {
        ordered_json j = report_envelope("verify", config.prime, config.seeds);
        j["checks"] = ordered_json::array();
        for (const auto& r : results) j["checks"].push_back(to_json(r));
        j["all_passed"] = all_passed;
        out << j.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "  ("
                << std::fixed << std::setprecision(2) << r.runtime_seconds
                << " s)  " << r.claim << "\n";
        }
        out << (all_passed ? "all checks passed" : "SOME CHECKS FAILED") << " ("
            << results.size() << " results)\n";
    }
    return all_passed ? kExitOk : kExitInternal;
}

/// `cache-audit`: recompute a sample of cached entries and compare.
inline int cmd_cache_audit(const RunConfig& config, std::ostream& out,
                           std::ostream& err) {
    if (config.cache_dir.empty()) {
        err << "error: cache-audit needs --cache-dir\n";
        return kExitUsage;
    }
    FileCache cache{config.cache_dir};
    const FileCache::AuditResult result = cache.audit(10, config.seeds.front());
    out << "audited " << result.audited << " entries, " << result.mismatches
        << " mismatches\n";
    for (const auto& d : result.details) err << "mismatch: " << d << "\n";
    return result.mismatches == 0 ? kExitOk : kExitInternal;
}

}  // namespace fatlines
