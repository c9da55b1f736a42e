#include "abelian/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "abelian/criticality.hpp"
#include "abelian/distribution.hpp"
#include "abelian/errors.hpp"
#include "abelian/estimation.hpp"
#include "abelian/identities.hpp"
#include "abelian/io.hpp"
#include "abelian/sampling.hpp"

namespace abelian::cli {

namespace {

using nlohmann::ordered_json;
using io::format_double;

class ArgumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ordered_json number_or_null(double value) {
    if (std::isfinite(value)) return value;
    return nullptr;
}

ordered_json metadata(std::string_view command, ordered_json parameters, std::string rerun) {
    ordered_json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["command"] = command;
    meta["parameters"] = std::move(parameters);
    meta["rerun"] = std::move(rerun);
    meta["timestamp"] = io::utc_timestamp();
    return meta;
}

void write_comment_header(std::ostream& out, const std::string& rerun,
                          const std::vector<std::string>& extra = {}) {
    out << "# " << kToolName << ' ' << kToolVersion << '\n';
    out << "# command: " << rerun << '\n';
    for (const auto& line : extra) out << "# " << line << '\n';
    out << "# timestamp: " << io::utc_timestamp() << '\n';
}

void write_envelope(std::ostream& out, ordered_json meta, ordered_json payload) {
    ordered_json doc;
    doc["metadata"] = std::move(meta);
    doc["payload"] = std::move(payload);
    out << doc.dump(2) << '\n';
}

std::string rerun_prefix(std::string_view command) {
    return std::string(kToolName) + ' ' + std::string(command);
}

// --- pmf -------------------------------------------------------------------

struct PmfOptions {
    double alpha = 0.0;
    std::int64_t n = 0;
    bool log_log = false;
};

int cmd_pmf(const PmfOptions& opt, std::ostream& out) {
    const AbelianParams params(opt.alpha, opt.n);
    std::string rerun = rerun_prefix("pmf") + " --alpha " + format_double(opt.alpha) + " --n " +
                        std::to_string(opt.n) + (opt.log_log ? " --log-log" : "");
    write_comment_header(out, rerun);
    out << (opt.log_log ? "log10_L,log10_pmf\n" : "L,pmf\n");
    for (std::int64_t size = 1; size <= params.n(); ++size) {
        if (opt.log_log) {
            const double lx = std::log10(static_cast<double>(size));
            const double ly = static_cast<double>(log_pmf_extended(params, size) / std::log(10.0L));
            out << format_double(lx) << ',' << format_double(ly) << '\n';
        } else {
            out << size << ',' << format_double(pmf(params, size)) << '\n';
        }
    }
    return kSuccess;
}

// --- sample ----------------------------------------------------------------

struct SampleOptions {
    double alpha = 0.9;
    std::int64_t n = 0;
    std::int64_t count = 1;
    std::uint64_t seed = 0;
    std::string method = "inverse-cdf";
    std::string binary_path;
};

int cmd_sample(const SampleOptions& opt, std::ostream& out) {
    const AbelianParams params(opt.alpha, opt.n);
    const SamplingMethod method = parse_sampling_method(opt.method);
    if (opt.count < 0) throw ArgumentError("--count must be >= 0");
    Sampler sampler = new_sampler(params, opt.seed, method);

    std::string rerun = rerun_prefix("sample") + " --alpha " + format_double(opt.alpha) + " --n " +
                        std::to_string(opt.n) + " --count " + std::to_string(opt.count) +
                        " --seed " + std::to_string(opt.seed) + " --method " +
                        std::string(to_string(method));
    if (!opt.binary_path.empty()) rerun += " --binary " + opt.binary_path;

    std::vector<std::string> extra{
        "generator: " + std::string(kGeneratorName) + " seed=" + std::to_string(opt.seed) +
        " method=" + std::string(to_string(method))};

    if (!opt.binary_path.empty()) {
        std::ofstream file(opt.binary_path, std::ios::binary);
        if (!file) throw DataError("cannot open " + opt.binary_path + " for writing");
        for (std::int64_t i = 0; i < opt.count; ++i) {
            auto value = static_cast<std::uint64_t>(sampler.draw());
            unsigned char bytes[8];
            for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(value >> (8 * b));
            file.write(reinterpret_cast<const char*>(bytes), sizeof(bytes));
        }
        if (!file) throw DataError("failed writing " + opt.binary_path);
        extra.push_back("binary: " + opt.binary_path + " uint64 little-endian count=" +
                        std::to_string(opt.count));
        write_comment_header(out, rerun, extra);
        return kSuccess;
    }

    write_comment_header(out, rerun, extra);
    std::string buffer;
    for (std::int64_t i = 0; i < opt.count; ++i) {
        buffer += std::to_string(sampler.draw());
        buffer += '\n';
        if (buffer.size() > (1u << 16)) {
            out << buffer;
            buffer.clear();
        }
    }
    out << buffer;
    return kSuccess;
}

// --- fit -------------------------------------------------------------------

struct FitOptions {
    std::string input;
    std::optional<std::int64_t> n;
    std::string n_range;
    double tol = 1e-8;
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    auto parse = [&](std::string_view part) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
            throw ArgumentError("--n-range must look like LO:HI, got '" + text + "'");
        }
        return v;
    };
    if (colon == std::string::npos) throw ArgumentError("--n-range must look like LO:HI, got '" + text + "'");
    const std::string_view view(text);
    return {parse(view.substr(0, colon)), parse(view.substr(colon + 1))};
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

ordered_json fit_payload(const FitReport& report) {
    ordered_json p;
    p["alpha_hat"] = report.alpha_hat;
    p["n_used"] = report.n_used;
    p["n_estimated"] = report.n_estimated;
    p["log_likelihood"] = report.log_likelihood;
    p["iterations"] = report.iterations;
    p["converged"] = report.converged;
    p["at_boundary"] = report.at_boundary;
    p["alpha_std_error"] = number_or_null(report.alpha_std_error);
    return p;
}

int cmd_fit(const FitOptions& opt, std::ostream& out) {
    if (!(opt.tol > 0.0)) throw ArgumentError("--tol must be positive");
    std::optional<std::pair<std::int64_t, std::int64_t>> range;
    if (!opt.n_range.empty()) {
        range = parse_range(opt.n_range);
        if (range->first > range->second) throw ArgumentError("--n-range LO:HI requires LO <= HI");
    }
    if (opt.n && *opt.n < 1) throw ArgumentError("--n must be >= 1");

    const std::string content = read_input(opt.input);
    const auto parsed = io::parse_sizes(content);

    // Grid points below the largest observed size have zero likelihood, so
    // the search starts there; a grid that ends below it is a data error.
    std::optional<std::pair<std::int64_t, std::int64_t>> grid;
    if (range) {
        if (range->second < parsed.data.max_size()) {
            std::ostringstream os;
            os << "size exceeds N: observed " << parsed.data.max_size() << " > largest candidate N="
               << range->second;
            throw DataError(os.str());
        }
        grid = std::make_pair(std::max(range->first, parsed.data.max_size()), range->second);
    }

    FitReport report;
    try {
        report = grid ? fit_joint(parsed.data, grid->first, grid->second, opt.tol)
                      : fit_alpha(parsed.data, *opt.n, opt.tol);
    } catch (const DomainError& e) {
        // Grid or N incompatible with the observed sizes.
        throw DataError(e.what());
    }

    ordered_json params;
    params["input"] = opt.input;
    std::string rerun = rerun_prefix("fit") + " --input " + opt.input;
    if (range) {
        params["n_range"] = {range->first, range->second};
        rerun += " --n-range " + std::to_string(range->first) + ':' + std::to_string(range->second);
    } else {
        params["n"] = *opt.n;
        rerun += " --n " + std::to_string(*opt.n);
    }
    params["tol"] = opt.tol;
    rerun += " --tol " + format_double(opt.tol);

    ordered_json payload = fit_payload(report);
    if (grid) payload["n_grid"] = {grid->first, grid->second};
    payload["observations"] = parsed.data.total();
    payload["distinct_sizes"] = parsed.data.counts().size();
    payload["max_size"] = parsed.data.max_size();
    payload["input_format"] = io::to_string(parsed.format);
    payload["input_digest"] = {{"algorithm", "fnv1a64"}, {"value", io::fnv1a64_hex(content)}};
    write_envelope(out, metadata("fit", std::move(params), std::move(rerun)), std::move(payload));
    return kSuccess;
}

// --- critical --------------------------------------------------------------

struct CriticalOptions {
    std::optional<std::int64_t> n;
    std::vector<std::int64_t> scaling;
    std::optional<double> alpha;
    double tol = 1e-10;
    double step = 1e-3;
};

void require_n_at_least_two(std::int64_t n) {
    if (n < 2) throw ArgumentError("N ≥ 2 required, got N=" + std::to_string(n));
}

int cmd_critical(const CriticalOptions& opt, std::ostream& out) {
    if (!(opt.tol > 0.0)) throw ArgumentError("--tol must be positive");
    if (!(opt.step > 0.0 && opt.step < 1.0)) throw ArgumentError("--step must lie in (0,1)");

    if (!opt.scaling.empty()) {
        for (auto n : opt.scaling) require_n_at_least_two(n);
        std::string list;
        for (auto n : opt.scaling) list += (list.empty() ? "" : ",") + std::to_string(n);
        write_comment_header(out, rerun_prefix("critical") + " --scaling " + list + " --tol " +
                                      format_double(opt.tol));
        out << "n,alpha_crit,reference,difference\n";
        for (const auto& row : alpha_crit_scaling(opt.scaling, opt.tol)) {
            out << row.n << ',' << format_double(row.alpha_crit) << ',' << format_double(row.reference)
                << ',' << format_double(row.difference) << '\n';
        }
        return kSuccess;
    }

    const std::int64_t n = *opt.n;
    require_n_at_least_two(n);
    if (opt.alpha) AbelianParams(*opt.alpha, n);
    const CriticalityReport report = analyze_criticality(n, opt.tol, opt.step);

    ordered_json params;
    params["n"] = n;
    params["tol"] = opt.tol;
    params["step"] = opt.step;
    std::string rerun = rerun_prefix("critical") + " --n " + std::to_string(n) + " --tol " +
                        format_double(opt.tol) + " --step " + format_double(opt.step);
    if (opt.alpha) {
        params["alpha"] = *opt.alpha;
        rerun += " --alpha " + format_double(*opt.alpha);
    }

    ordered_json payload;
    payload["n"] = report.n;
    payload["alpha_crit"] = report.alpha_crit;
    payload["reference_one_minus_inv_sqrt_n"] = 1.0 - 1.0 / std::sqrt(static_cast<double>(n));
    if (report.a_region) {
        payload["a_region"] = {{"lo", report.a_region->lo}, {"hi", report.a_region->hi}};
    } else {
        payload["a_region"] = nullptr;
    }
    payload["alpha_crit_in_region"] = report.alpha_crit_in_region;
    payload["tail_exponent"] = number_or_null(report.tail_exponent);
    payload["tail_window"] = {report.tail_window.l_min, report.tail_window.l_max};
    if (opt.alpha) {
        payload["query"] = {{"alpha", *opt.alpha}, {"regime", to_string(report.regime(*opt.alpha))}};
    }
    write_envelope(out, metadata("critical", std::move(params), std::move(rerun)), std::move(payload));
    return kSuccess;
}

// --- check -----------------------------------------------------------------

struct CheckOptions {
    IdentitySuiteConfig config;
};

int cmd_check(const CheckOptions& opt, std::ostream& out) {
    const auto& cfg = opt.config;
    if (cfg.max_i < 0 || cfg.max_n < 1 || cfg.max_rational_n < 1 || cfg.points_per_n < 0) {
        throw ArgumentError("check ranges must be non-negative (max-n >= 1)");
    }
    write_comment_header(out, rerun_prefix("check") + " --max-i " + std::to_string(cfg.max_i) +
                                  " --max-n " + std::to_string(cfg.max_n) + " --max-rational-n " +
                                  std::to_string(cfg.max_rational_n) + " --points " +
                                  std::to_string(cfg.points_per_n) + " --seed " +
                                  std::to_string(cfg.seed));
    bool all_passed = true;
    std::int64_t total = 0;
    for (const auto& result : run_identity_suite(cfg)) {
        total += result.instances;
        all_passed = all_passed && result.passed;
        out << (result.passed ? "PASS " : "FAIL ") << result.name << " instances=" << result.instances;
        if (result.witness) out << " witness: " << *result.witness;
        out << '\n';
    }
    out << (all_passed ? "PASS" : "FAIL") << " total instances=" << total << '\n';
    return all_passed ? kSuccess : kCheckFailed;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Abelian distribution: evaluation, sampling, fitting and criticality analysis",
                 std::string(kToolName)};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    PmfOptions pmf_opt;
    auto* pmf_cmd = app.add_subcommand("pmf", "Tabulate the PMF over L = 1..N as CSV");
    pmf_cmd->add_option("--alpha", pmf_opt.alpha, "Coupling alpha in (0,1)")->required();
    pmf_cmd->add_option("--n", pmf_opt.n, "System size N >= 1")->required();
    pmf_cmd->add_flag("--log-log", pmf_opt.log_log, "Emit log10(L), log10(pmf)");

    SampleOptions sample_opt;
    auto* sample_cmd = app.add_subcommand("sample", "Draw event sizes, one per line");
    sample_cmd->add_option("--alpha", sample_opt.alpha, "Coupling alpha in (0,1)")->capture_default_str();
    sample_cmd->add_option("--n", sample_opt.n, "System size N >= 1")->required();
    sample_cmd->add_option("--count", sample_opt.count, "Number of draws")->capture_default_str();
    sample_cmd->add_option("--seed", sample_opt.seed, "Generator seed")->capture_default_str();
    sample_cmd->add_option("--method", sample_opt.method, "inverse-cdf or alias")->capture_default_str();
    sample_cmd->add_option("--binary", sample_opt.binary_path,
                           "Write draws as little-endian uint64 to this file instead of stdout");

    FitOptions fit_opt;
    auto* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood fit to observed sizes");
    fit_cmd->add_option("--input", fit_opt.input, "Sizes file (one per line, or size,count CSV); - for stdin")
        ->required();
    auto* fit_n = fit_cmd->add_option("--n", fit_opt.n, "Fixed system size N");
    auto* fit_range = fit_cmd->add_option("--n-range", fit_opt.n_range, "Fit N over LO:HI");
    fit_n->excludes(fit_range);
    fit_cmd->add_option("--tol", fit_opt.tol, "Tolerance on alpha")->capture_default_str();

    CriticalOptions crit_opt;
    auto* crit_cmd = app.add_subcommand("critical", "Criticality report for N, or a scaling table");
    auto* crit_n = crit_cmd->add_option("--n", crit_opt.n, "System size N >= 2");
    auto* crit_scaling = crit_cmd->add_option("--scaling", crit_opt.scaling, "Comma-separated N list")
                             ->delimiter(',');
    crit_n->excludes(crit_scaling);
    crit_cmd->add_option("--alpha", crit_opt.alpha, "Classify this alpha into a regime");
    crit_cmd->add_option("--tol", crit_opt.tol, "Bisection tolerance on alpha_crit")->capture_default_str();
    crit_cmd->add_option("--step", crit_opt.step, "Alpha grid step for A(N)")->capture_default_str();

    CheckOptions check_opt;
    auto* check_cmd = app.add_subcommand("check", "Verify the exact combinatorial identities");
    check_cmd->add_option("--max-i", check_opt.config.max_i, "Largest coefficient index")->capture_default_str();
    check_cmd->add_option("--max-n", check_opt.config.max_n, "Largest N for coefficients")->capture_default_str();
    check_cmd->add_option("--max-rational-n", check_opt.config.max_rational_n,
                          "Largest N for rational-point checks")
        ->capture_default_str();
    check_cmd->add_option("--points", check_opt.config.points_per_n, "Random rational points per N")
        ->capture_default_str();
    check_cmd->add_option("--seed", check_opt.config.seed, "Seed for rational points")->capture_default_str();
    check_cmd->add_option("--inject-fault", check_opt.config.fault_offset)->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kArgumentError;
    }

    try {
        if (pmf_cmd->parsed()) return cmd_pmf(pmf_opt, out);
        if (sample_cmd->parsed()) return cmd_sample(sample_opt, out);
        if (fit_cmd->parsed()) {
            if (!fit_opt.n && fit_opt.n_range.empty()) throw ArgumentError("one of --n or --n-range is required");
            return cmd_fit(fit_opt, out);
        }
        if (crit_cmd->parsed()) {
            if (!crit_opt.n && crit_opt.scaling.empty()) throw ArgumentError("one of --n or --scaling is required");
            return cmd_critical(crit_opt, out);
        }
        if (check_cmd->parsed()) return cmd_check(check_opt, out);
    } catch (const ArgumentError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kArgumentError;
    } catch (const DataError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kDataError;
    } catch (const CapacityError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kArgumentError;
    } catch (const DomainError& e) {
        err << kToolName << ": " << e.what() << '\n';
        return kArgumentError;
    }
    return kArgumentError;
}

} // namespace abelian::cli
