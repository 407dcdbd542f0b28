// Command-line surface for the point-count library: closed-form table export,
// brute-force verification, cohomology decomposition, class-function
// induction, cohomology bounds, and cache management.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moduli/brute.hpp"
#include "moduli/closedform.hpp"
#include "moduli/gf.hpp"
#include "moduli/gysin.hpp"
#include "moduli/partition.hpp"
#include "moduli/poly.hpp"
#include "moduli/reptheory.hpp"
#include "moduli/sp6.hpp"

using json = nlohmann::json;
using namespace moduli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

// "[2^2,1^3],[7],5" -> list of partitions; commas split only at bracket depth 0.
std::vector<Partition> parse_partition_list(const std::string& text) {
    std::vector<Partition> out;
    std::string cur;
    int depth = 0;
    auto flush = [&] {
        if (cur.empty()) return;
        out.push_back(parse_partition(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            flush();
            continue;
        }
        cur += c;
    }
    flush();
    if (out.empty()) throw UsageError("no partitions in '" + text + "'");
    return out;
}

std::vector<long long> parse_q_list(const std::string& text) {
    std::vector<long long> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoll(cur));
            cur.clear();
            continue;
        }
        cur += c;
    }
    if (!cur.empty()) out.push_back(std::stoll(cur));
    if (out.empty()) throw UsageError("no field sizes in '" + text + "'");
    for (long long q : out) gf::parse_prime_power(q);  // throws for even / non-prime-power q
    return out;
}

std::filesystem::path resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("MODULI_CACHE_DIR"); env != nullptr && *env != '\0') return env;
    return "./.cache";
}

brute::Strategy parse_strategy(const std::string& s) {
    if (s == "auto") return brute::Strategy::Auto;
    if (s == "quotient-divide") return brute::Strategy::QuotientDivide;
    if (s == "frame-fix") return brute::Strategy::FrameFix;
    throw UsageError("unknown strategy '" + s + "'");
}

// --- closed-form table export -----------------------------------------------

struct TableRow {
    Partition lambda;
    CountPolynomial poly;
};

std::vector<TableRow> closed_table(const std::string& space, const std::vector<Partition>& subset) {
    int n;
    std::function<CountPolynomial(const Partition&)> fetch;
    if (space == "q2") {
        n = 7;
        fetch = [](const Partition& p) { return closedform::quartic_locus_count(p); };
    } else if (space == "m08") {
        n = 8;
        fetch = [](const Partition& p) { return closedform::m08_count(p); };
    } else if (space == "h3-s8") {
        n = 8;
        fetch = [](const Partition& p) { return closedform::h3_count(p, closedform::SymGroup::S8); };
    } else if (space == "h3-s7") {
        n = 7;
        fetch = [](const Partition& p) { return closedform::h3_count(p, closedform::SymGroup::S7); };
    } else {
        throw UsageError("unknown space '" + space + "'");
    }
    std::vector<TableRow> rows;
    std::vector<Partition> order = subset.empty() ? all_partitions(n) : subset;
    for (const Partition& lam : order) {
        if (partition_sum(lam) != n)
            throw UsageError(partition_display(lam) + " is not a partition of " + std::to_string(n));
        rows.push_back({lam, fetch(lam)});
    }
    return rows;
}

// Ascending coefficient list padded to a common length so columns align.
std::vector<long long> ascending_coeffs(const CountPolynomial& p, int width) {
    std::vector<long long> c(static_cast<std::size_t>(width), 0);
    for (int k = 0; k < width; ++k) c[static_cast<std::size_t>(k)] = p.coeff(k);
    return c;
}

void emit_table(const std::vector<TableRow>& rows, const std::string& format, std::ostream& os) {
    int width = 1;
    for (const TableRow& r : rows) width = std::max(width, r.poly.degree() + 1);
    if (format == "csv") {
        // "<label>;<c0,c1,...>" with coefficients in ascending degree order.
        for (const TableRow& r : rows) {
            os << partition_csv_label(r.lambda) << ';';
            auto c = ascending_coeffs(r.poly, width);
            for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
            os << '\n';
        }
    } else if (format == "json") {
        json arr = json::array();
        for (const TableRow& r : rows)
            arr.push_back({{"lambda", r.lambda}, {"coefficients_ascending", ascending_coeffs(r.poly, width)}});
        os << arr.dump(2) << '\n';
    } else if (format == "latex") {
        os << "\\begin{tabular}{l|l}\n$\\lambda$ & count \\\\\n\\hline\n";
        for (const TableRow& r : rows)
            os << '$' << partition_display(r.lambda) << "$ & $" << r.poly.to_string() << "$ \\\\\n";
        os << "\\end{tabular}\n";
    } else if (format == "markdown") {
        os << "| lambda | count |\n|---|---|\n";
        for (const TableRow& r : rows)
            os << "| " << partition_display(r.lambda) << " | " << r.poly.to_string() << " |\n";
    } else {
        throw UsageError("unknown format '" + format + "'");
    }
}

// --- verification ------------------------------------------------------------

struct VerifyRow {
    std::string lambda;
    std::string component;  // empty for plain-count rows
    std::string status;     // OK / MISMATCH / SKIPPED
    long long closed_form_value = 0;
    long long brute_value = 0;
    bool agree = false;
    double elapsed_ms = 0;
    std::string reason;  // for SKIPPED
};

json verify_row_json(const VerifyRow& r) {
    json j{{"lambda", r.lambda}, {"status", r.status}};
    if (!r.component.empty()) j["component"] = r.component;
    if (r.status == "SKIPPED") {
        j["reason"] = r.reason;
    } else {
        j["closed_form_value"] = r.closed_form_value;
        j["brute_value"] = r.brute_value;
        j["agree"] = r.agree;
        j["elapsed_ms"] = r.elapsed_ms;
    }
    return j;
}

void print_verify_row(const VerifyRow& r) {
    std::string label = r.lambda + (r.component.empty() ? "" : " " + r.component);
    if (r.status == "SKIPPED") {
        std::cout << "  " << label << ": SKIPPED (" << r.reason << ")\n";
    } else {
        std::cout << "  " << label << ": closed-form " << r.closed_form_value << ", brute "
                  << r.brute_value << " -> " << (r.agree ? "AGREE" : "MISMATCH") << " ("
                  << static_cast<long long>(r.elapsed_ms) << " ms)\n";
    }
}

int run_verify(const std::string& space, const std::vector<long long>& qs,
               const std::vector<Partition>& subset, brute::Strategy strategy, int threads,
               bool components) {
    if (components && space != "q2")
        throw UsageError("--components applies to the q2 space only");
    brute::Options opts;
    opts.threads = threads;
    bool any_mismatch = false;
    for (long long q : qs) {
        std::vector<VerifyRow> rows;
        std::cout << "verify " << space << " at q=" << q << ":\n";
        if (components) {
            std::vector<Partition> cases = subset.empty() ? closedform::complete_delta_cases() : subset;
            for (const Partition& lam : cases) {
                auto uspec = closedform::case_uspec(lam);
                VerifyRow base;
                base.lambda = partition_display(lam);
                double t0 = now_seconds();
                std::map<std::string, long long> got;
                try {
                    got = brute::count_fixed_delta_components(lam, q, uspec, opts);
                } catch (const gf::ExtensionTooLarge& e) {
                    base.status = "SKIPPED";
                    base.reason = e.what();
                    rows.push_back(base);
                    print_verify_row(base);
                    continue;
                }
                double ms = (now_seconds() - t0) * 1000.0;
                // The raw general-position total ties the components to the
                // headline count: GP = |PGL3| * (table polynomial).
                std::map<std::string, long long> want;
                for (const auto& f : closedform::delta_components(lam))
                    want[f.component] = f.poly.eval(q);
                want["GP"] = closedform::group_order(closedform::GroupKind::PGL3, q) *
                             closedform::quartic_locus_count(lam).eval(q);
                for (const auto& [name, value] : got) {
                    auto it = want.find(name);
                    if (it == want.end()) continue;
                    VerifyRow r = base;
                    r.component = name;
                    r.status = value == it->second ? "OK" : "MISMATCH";
                    r.closed_form_value = it->second;
                    r.brute_value = value;
                    r.agree = value == it->second;
                    r.elapsed_ms = ms;
                    any_mismatch = any_mismatch || !r.agree;
                    rows.push_back(r);
                    print_verify_row(r);
                }
            }
        } else if (space == "q2") {
            std::vector<Partition> lams = subset.empty() ? all_partitions(7) : subset;
            for (const Partition& lam : lams) {
                VerifyRow r;
                r.lambda = partition_display(lam);
                long long want = closedform::quartic_locus_count(lam).eval(q);
                double t0 = now_seconds();
                try {
                    auto rep = brute::count_fixed_septuples(lam, q, strategy, opts);
                    r.brute_value = rep.quotient_count;
                } catch (const gf::ExtensionTooLarge& e) {
                    r.status = "SKIPPED";
                    r.reason = e.what();
                    rows.push_back(r);
                    print_verify_row(r);
                    continue;
                }
                r.elapsed_ms = (now_seconds() - t0) * 1000.0;
                r.closed_form_value = want;
                r.agree = r.brute_value == want;
                r.status = r.agree ? "OK" : "MISMATCH";
                any_mismatch = any_mismatch || !r.agree;
                rows.push_back(r);
                print_verify_row(r);
            }
        } else if (space == "m08") {
            std::vector<Partition> lams = subset.empty() ? all_partitions(8) : subset;
            for (const Partition& lam : lams) {
                VerifyRow r;
                r.lambda = partition_display(lam);
                long long want = closedform::m08_count(lam).eval(q);
                double t0 = now_seconds();
                try {
                    r.brute_value = brute::count_m0n_fixed(lam, q, 3, opts);
                } catch (const gf::ExtensionTooLarge& e) {
                    r.status = "SKIPPED";
                    r.reason = e.what();
                    rows.push_back(r);
                    print_verify_row(r);
                    continue;
                }
                r.elapsed_ms = (now_seconds() - t0) * 1000.0;
                r.closed_form_value = want;
                r.agree = r.brute_value == want;
                r.status = r.agree ? "OK" : "MISMATCH";
                any_mismatch = any_mismatch || !r.agree;
                rows.push_back(r);
                print_verify_row(r);
            }
        } else {
            throw UsageError("unknown space '" + space + "' (expected q2 or m08)");
        }

        json report = json::array();
        for (const VerifyRow& r : rows) report.push_back(verify_row_json(r));
        std::string fname = "verify-" + space + "-q" + std::to_string(q) + ".json";
        std::ofstream out(fname);
        if (!out) throw std::runtime_error("cannot write report file " + fname);
        out << report.dump(2) << '\n';
        std::cout << "  report written to " << fname << "\n";
    }
    return any_mismatch ? kExitVerifyFailed : kExitOk;
}

// --- cohomology ---------------------------------------------------------------

reptheory::CohomologyTable cohomology_table(const std::string& space) {
    reptheory::PolyClassFunction counts{7, {}};
    int dim;
    if (space == "q2") {
        dim = 6;
        for (const Partition& lam : all_partitions(7)) counts.values[lam] = closedform::quartic_locus_count(lam);
    } else if (space == "h3") {
        dim = 5;
        for (const Partition& lam : all_partitions(7))
            counts.values[lam] = closedform::h3_count(lam, closedform::SymGroup::S7);
    } else {
        throw UsageError("unknown space '" + space + "' (expected q2 or h3)");
    }
    return reptheory::decompose_counts(counts, dim);
}

void emit_cohomology(const reptheory::CohomologyTable& t, const std::string& format, std::ostream& os) {
    if (format == "csv") {
        reptheory::cohomology_csv(t, os);
    } else if (format == "latex") {
        reptheory::cohomology_latex(t, os);
    } else if (format == "json") {
        json j;
        j["irreps"] = json::array();
        for (const Partition& p : t.irreps) j["irreps"].push_back(p);
        j["dims"] = t.dims;
        j["rows"] = t.rows;
        os << j.dump(2) << '\n';
    } else if (format == "markdown") {
        os << "| degree |";
        for (const Partition& p : t.irreps) os << " s_" << partition_csv_label(p) << " |";
        os << "\n|" << std::string(static_cast<std::size_t>(t.irreps.size()) + 1, ' ');
        os << "---|";
        for (std::size_t i = 0; i < t.irreps.size(); ++i) os << "---|";
        os << '\n';
        for (std::size_t k = 0; k < t.rows.size(); ++k) {
            os << "| H^" << k << " |";
            for (long long m : t.rows[k]) os << ' ' << m << " |";
            os << '\n';
        }
    } else {
        throw UsageError("unknown format '" + format + "'");
    }
}

// --- induce --------------------------------------------------------------------

int run_induce(const std::filesystem::path& cache_dir, bool check_index, bool recompute, int threads) {
    double t0 = now_seconds();
    sp6::GroupEnumeration group;
    if (recompute) {
        group = sp6::generate_group();
        std::error_code ec;
        std::filesystem::create_directories(cache_dir, ec);
        sp6::save_group_cache(group, cache_dir / sp6::kCacheFileName);
    } else {
        group = sp6::generate_group(cache_dir);
    }
    std::cout << "group enumerated: " << group.size() << " elements ("
              << static_cast<long long>((now_seconds() - t0) * 1000) << " ms)\n";

    auto emb = sp6::embed_s8(group);
    std::cout << "symmetric-group image: " << emb.reverse.size() << " matrices, index "
              << group.size() / emb.reverse.size() << "\n";

    if (check_index) {
        std::cout << group.size() << " / " << emb.reverse.size() << " / "
                  << group.size() / emb.reverse.size() << "\n";
        return kExitOk;
    }

    sp6::S8ClassFunction psi;
    for (const Partition& mu : all_partitions(8)) psi[mu] = closedform::m08_count(mu);
    sp6::InduceOptions opt;
    opt.threads = threads;
    auto induced = sp6::induce_class_function(psi, group, emb, opt);

    bool all_agree = true;
    std::cout << "induced class function (" << induced.size() << " rows):\n";
    for (const auto& [mu, poly] : induced) {
        CountPolynomial want = closedform::h3_count(mu, closedform::SymGroup::S8);
        bool agree = poly == want;
        all_agree = all_agree && agree;
        std::cout << "  " << partition_display(mu) << ": " << poly.to_string() << " -> "
                  << (agree ? "AGREE" : "DISAGREE") << '\n';
    }
    auto restricted = sp6::restrict_induced_to_s7(induced);
    std::cout << "restriction (" << restricted.size() << " rows):\n";
    for (const auto& [mu, poly] : restricted) {
        CountPolynomial want = closedform::h3_count(mu, closedform::SymGroup::S7);
        bool agree = poly == want;
        all_agree = all_agree && agree;
        std::cout << "  " << partition_display(mu) << ": " << poly.to_string() << " -> "
                  << (agree ? "AGREE" : "DISAGREE") << '\n';
    }
    std::cout << (all_agree ? "all rows agree with the stored tables\n"
                            : "DISAGREEMENT with the stored tables\n");
    return all_agree ? kExitOk : kExitVerifyFailed;
}

// --- bounds ----------------------------------------------------------------------

void emit_bounds(const gysin::BoundsTable& b, const std::string& format, std::ostream& os) {
    if (format == "csv") {
        gysin::bounds_csv(b, os);
    } else if (format == "json") {
        json arr = json::array();
        for (const auto& e : b.entries)
            arr.push_back({{"k", e.k},
                           {"lambda", e.lambda},
                           {"n_k", e.n_k},
                           {"bound_target", e.target == gysin::BoundTarget::Hk ? "Hk" : "Hk_plus_1"},
                           {"bound_value", e.bound_value}});
        os << arr.dump(2) << '\n';
    } else if (format == "markdown") {
        os << "| k | lambda | n_k | bound |\n|---|---|---|---|\n";
        for (const auto& e : b.entries)
            os << "| " << e.k << " | " << partition_display(e.lambda) << " | " << e.n_k << " | "
               << gysin::bound_statement(e) << " |\n";
    } else if (format == "latex") {
        os << "\\begin{tabular}{c|c|c|l}\n$k$ & $\\lambda$ & $n^k$ & bound \\\\\n\\hline\n";
        for (const auto& e : b.entries)
            os << e.k << " & $" << partition_display(e.lambda) << "$ & " << e.n_k << " & "
               << gysin::bound_statement(e) << " \\\\\n";
        os << "\\end{tabular}\n";
    } else {
        throw UsageError("unknown format '" + format + "'");
    }
}

// --- cache ----------------------------------------------------------------------

int run_cache(const std::filesystem::path& cache_dir, bool clear) {
    std::filesystem::path file = cache_dir / sp6::kCacheFileName;
    if (clear) {
        std::error_code ec;
        bool removed = std::filesystem::remove(file, ec);
        std::cout << (removed ? "removed " : "nothing to remove at ") << file.string() << '\n';
        return kExitOk;
    }
    double t0 = now_seconds();
    auto group = sp6::generate_group(cache_dir);
    std::cout << "cache file: " << file.string() << '\n'
              << "elements:   " << group.size() << '\n'
              << "file size:  " << std::filesystem::file_size(file) << " bytes\n"
              << "ready in    " << static_cast<long long>((now_seconds() - t0) * 1000) << " ms\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant point counts and cohomology of plane-quartic and hyperelliptic moduli"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string q_text;
    std::string partitions_text;
    std::string strategy_text = "auto";
    std::string cache_dir_flag;
    int threads = 1;
    bool components = false;
    bool poincare = false;
    bool check_index = false;
    bool recompute = false;
    bool clear_cache = false;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json", "latex", "markdown"}));
    };

    std::string tables_space;
    CLI::App* tables = app.add_subcommand("tables", "emit a closed-form count table");
    tables->add_option("space", tables_space, "q2 | m08 | h3-s8 | h3-s7")
        ->required()
        ->check(CLI::IsMember({"q2", "m08", "h3-s8", "h3-s7"}));
    tables->add_option("--partitions", partitions_text, "comma list of bracketed partitions");
    add_format(tables);

    std::string verify_space;
    CLI::App* verify = app.add_subcommand("verify", "compare closed forms against brute-force counts");
    verify->add_option("space", verify_space, "q2 | m08")
        ->required()
        ->check(CLI::IsMember({"q2", "m08"}));
    verify->add_option("--q", q_text, "comma list of odd prime powers")->required();
    verify->add_option("--partitions", partitions_text, "comma list of bracketed partitions");
    verify->add_option("--strategy", strategy_text, "auto | quotient-divide | frame-fix")
        ->check(CLI::IsMember({"auto", "quotient-divide", "frame-fix"}));
    verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    verify->add_flag("--components", components, "verify boundary components instead of totals");

    std::string cohomology_space;
    CLI::App* cohomology = app.add_subcommand("cohomology", "decompose count polynomials into irreducibles");
    cohomology->add_option("space", cohomology_space, "q2 | h3")
        ->required()
        ->check(CLI::IsMember({"q2", "h3"}));
    cohomology->add_flag("--poincare", poincare, "emit the Poincare polynomial instead of the table");
    add_format(cohomology);

    CLI::App* induce = app.add_subcommand("induce", "rebuild the induced tables from first principles");
    induce->add_option("--cache-dir", cache_dir_flag, "group-enumeration cache directory");
    induce->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    induce->add_flag("--check-index", check_index, "print group order / image order / index and exit");
    induce->add_flag("--recompute", recompute, "ignore any existing cache and rebuild");

    CLI::App* bounds = app.add_subcommand("bounds", "emit the cohomology bounds table");
    add_format(bounds);

    CLI::App* cache = app.add_subcommand("cache", "build or inspect the group-enumeration cache");
    cache->add_option("--cache-dir", cache_dir_flag, "group-enumeration cache directory");
    cache->add_flag("--clear", clear_cache, "delete the cache file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        std::vector<Partition> subset;
        if (!partitions_text.empty()) subset = parse_partition_list(partitions_text);

        if (tables->parsed()) {
            emit_table(closed_table(tables_space, subset), format, std::cout);
            return kExitOk;
        }
        if (verify->parsed()) {
            return run_verify(verify_space, parse_q_list(q_text), subset, parse_strategy(strategy_text),
                              threads, components);
        }
        if (cohomology->parsed()) {
            auto table = cohomology_table(cohomology_space);
            if (poincare) {
                auto p = reptheory::poincare_polynomial(table);
                if (format == "json") {
                    json j{{"coefficients_ascending", p.coeffs()}};
                    std::cout << j.dump(2) << '\n';
                } else {
                    std::cout << p.to_string("t") << '\n';
                }
            } else {
                emit_cohomology(table, format, std::cout);
            }
            return kExitOk;
        }
        if (induce->parsed())
            return run_induce(resolve_cache_dir(cache_dir_flag), check_index, recompute, threads);
        if (bounds->parsed()) {
            emit_bounds(gysin::compute_bounds(cohomology_table("q2"), cohomology_table("h3")), format,
                        std::cout);
            return kExitOk;
        }
        if (cache->parsed()) return run_cache(resolve_cache_dir(cache_dir_flag), clear_cache);
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const gf::EvenCharacteristic& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
}
