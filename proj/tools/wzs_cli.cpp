// Command-line front end: check sequences, compute constants with
// certificates, run the verification suite, and emit tables.
//
// Exit codes: 0 success/present, 1 definite absence (check) or n/a,
// 2 usage error, 3 incomplete search.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wzs/wzs.hpp"

namespace {

using namespace wzs;

// "+-1" is shorthand for {1, m-1}; otherwise comma-separated signed
// residues, reduced mod m with duplicates collapsed (warned, since
// {+1,-1} collapses to {1} at m=2).
std::vector<int> parse_weight_set(const std::string& text, int modulus) {
    std::vector<int> raw;
    if (text == "+-1") {
        raw = {1, -1};
    } else {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw CLI::ValidationError("empty entry in weight set");
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size())
                throw CLI::ValidationError("bad weight '" + tok + "'");
            raw.push_back(v);
        }
    }
    std::vector<int> reduced;
    for (int v : raw) {
        int red = ((v % modulus) + modulus) % modulus;
        reduced.push_back(red);
    }
    std::vector<int> sorted = reduced;
    std::sort(sorted.begin(), sorted.end());
    if (std::unique(sorted.begin(), sorted.end()) != sorted.end())
        std::cerr << "warning: duplicate weights collapsed after reduction mod "
                  << modulus << "\n";
    return reduced;
}

Sequence parse_sequence(const ModuleSpec& mod, const std::string& text) {
    Sequence s;
    std::stringstream ss(text);
    std::string tok;
    int position = 0;
    while (std::getline(ss, tok, ',')) {
        ++position;
        std::vector<int> coords;
        std::stringstream cs(tok);
        std::string c;
        while (std::getline(cs, c, ':')) {
            try {
                std::size_t pos = 0;
                coords.push_back(std::stoi(c, &pos));
                if (pos != c.size()) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                throw std::runtime_error("parse error at element " +
                                         std::to_string(position) + ": '" + tok + "'");
            }
        }
        if (static_cast<int>(coords.size()) != mod.rank())
            throw std::runtime_error("element " + std::to_string(position) + " has " +
                                     std::to_string(coords.size()) + " coordinates, expected " +
                                     std::to_string(mod.rank()));
        s.push_back(mod.elem_of(coords));
    }
    if (s.empty()) throw std::runtime_error("empty sequence");
    return s;
}

std::optional<std::string> cache_dir_from(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("WZS_CACHE_DIR")) return std::string(env);
    return std::nullopt;
}

void attach_cache(ConstantEngine& eng, const std::optional<std::string>& dir) {
    if (!dir) return;
    auto cache = std::make_shared<CertificateCache>(*dir);
    eng.set_cache_hooks(
        [cache](const ModuleSpec& mod, const WeightConfig& cfg, ConstantKind kind) {
            return cache->load(mod, cfg, kind);
        },
        [cache](const ConstantCertificate& cert) { cache->store(cert); });
}

void print_witness(const ModuleSpec& mod, const Sequence& s, const Witness& w) {
    std::cout << "indices:";
    for (int i : w.indices) std::cout << " " << i;
    std::cout << "\nterms:   " << [&] {
        Sequence sub;
        for (int i : w.indices) sub.push_back(s[static_cast<std::size_t>(i)]);
        return to_string(mod, sub);
    }();
    std::cout << "\na-weights:";
    for (Scalar a : w.a_weights) std::cout << " " << a;
    if (w.b_weights) {
        std::cout << "\nb-weights:";
        for (Scalar b : *w.b_weights) std::cout << " " << b;
    }
    std::cout << "\n";
}

std::string claim_text_row(const ClaimResult& r) {
    std::ostringstream os;
    os << r.claim_id << "  m=" << r.params.modulus << " r=" << r.params.rank;
    os << " A={" << r.params.a << "}";
    if (!r.params.b.empty()) os << " B={" << r.params.b << "}";
    os << "  " << r.lhs << " " << r.relation << " " << r.rhs << "  [" << r.status << "]";
    if (!r.note.empty()) os << " " << r.note;
    return os.str();
}

int run_check(const std::string& seq_text, int modulus, int rank, const std::string& a_text,
              const std::string& b_text, int exact_len, bool consecutive, bool full) {
    ModuleSpec mod(modulus, rank);
    std::optional<std::vector<int>> b;
    if (!b_text.empty()) b = parse_weight_set(b_text, modulus);
    WeightConfig cfg = WeightConfig::make(mod, parse_weight_set(a_text, modulus), b);
    Sequence s = parse_sequence(mod, seq_text);

    SubseqConstraint c = SubseqConstraint::any();
    if (exact_len > 0) c = SubseqConstraint::exact(exact_len);
    if (consecutive) c = SubseqConstraint::consecutive();
    if (full) c = SubseqConstraint::full();

    auto w = find_subsequence(mod, s, cfg, c);
    if (!w) {
        std::cout << "absent\n";
        return 1;
    }
    std::cout << "present\n";
    print_witness(mod, s, *w);
    return 0;
}

int run_compute(const std::string& kind_text, int modulus, int rank, const std::string& a_text,
                const std::string& b_text, int threads, bool no_symmetry,
                const std::optional<std::string>& cache_dir, int cap) {
    ModuleSpec mod(modulus, rank);
    std::optional<std::vector<int>> b;
    if (!b_text.empty()) b = parse_weight_set(b_text, modulus);
    WeightConfig cfg = WeightConfig::make(mod, parse_weight_set(a_text, modulus), b);
    ConstantKind kind = kind_of_string(kind_text);

    SearchOptions opts;
    opts.threads = threads;
    opts.symmetry_reduction = !no_symmetry;
    ConstantEngine eng(opts);
    attach_cache(eng, cache_dir);
    if (cap > 0) {
        // explicit cap bypasses the engine memo so the flag always applies
        auto cert = compute_constant(mod, cfg, kind, opts, cap);
        if (cache_dir) CertificateCache(*cache_dir).store(cert);
        std::cout << to_string(kind) << " = " << cert.value << "\n";
        std::cout << "extremal: " << to_string(mod, cert.extremal) << "\n";
        std::cout << "nodes explored: " << cert.stats.nodes_explored << "\n";
        return 0;
    }
    auto cert = eng.get(mod, cfg, kind);
    std::cout << to_string(kind) << " = " << cert.value << "\n";
    std::cout << "extremal: " << to_string(mod, cert.extremal) << "\n";
    std::cout << "nodes explored: " << cert.stats.nodes_explored << "\n";
    return 0;
}

SuiteRanges ranges_from_config(const std::string& path) {
    SuiteRanges r;
    if (path.empty()) return r;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j;
    in >> j;
    auto opt_vec = [&](const char* key, std::vector<int>& dst) {
        if (j.contains(key)) dst = j.at(key).get<std::vector<int>>();
    };
    opt_vec("d_mods", r.d_mods);
    opt_vec("e_odd", r.e_odd);
    opt_vec("e_even", r.e_even);
    opt_vec("c_mods", r.c_mods);
    opt_vec("c11_mods", r.c11_mods);
    opt_vec("de11_mods", r.de11_mods);
    opt_vec("z2_ranks_de", r.z2_ranks_de);
    opt_vec("z2_ranks_c", r.z2_ranks_c);
    if (j.contains("budget")) r.node_budget = j.at("budget").get<std::uint64_t>();
    if (j.contains("claims")) r.claim_filter = j.at("claims").get<std::vector<std::string>>();
    return r;
}

int run_verify(const std::string& config_path, const std::string& out_json,
               const std::string& out_text, int threads,
               const std::optional<std::string>& cache_dir,
               std::vector<int> conjecture_mods) {
    SuiteRanges ranges = ranges_from_config(config_path);
    ranges.threads = threads;

    ConstantEngine eng;
    attach_cache(eng, cache_dir);

    auto rows = run_suite(ranges, eng);
    auto conj = scan_conjectures(conjecture_mods, eng, ranges.node_budget, threads);

    json report;
    report["engine_version"] = kEngineVersion;
    json claims = json::array();
    for (const auto& r : rows) claims.push_back(claim_to_json(r));
    report["claims"] = claims;
    json conjectures = json::array();
    for (const auto& r : conj) conjectures.push_back(claim_to_json(r));
    report["conjectures"] = conjectures;

    int violated = 0, skipped = 0;
    std::ostringstream text;
    for (const auto& r : rows) {
        text << claim_text_row(r) << "\n";
        if (r.status == "violated") ++violated;
        if (r.status == "skipped") ++skipped;
    }
    for (const auto& r : conj) text << claim_text_row(r) << "\n";
    text << "claims: " << rows.size() << ", violated: " << violated
         << ", skipped: " << skipped << "\n";

    std::cout << text.str();
    if (!out_json.empty()) {
        std::ofstream out(out_json);
        out << report.dump(2) << "\n";
    }
    if (!out_text.empty()) {
        std::ofstream out(out_text);
        out << text.str();
    }
    if (skipped > 0) std::cerr << "warning: " << skipped << " rows skipped\n";
    return violated == 0 ? 0 : 1;
}

std::vector<int> parse_mod_range(const std::string& text) {
    std::vector<int> mods;
    if (text.empty()) return mods;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        for (int m = lo; m <= hi; ++m) mods.push_back(m);
        return mods;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) mods.push_back(std::stoi(tok));
    return mods;
}

int run_table(const std::string& kinds_text, const std::string& mods_text, int rank,
              const std::string& a_text, const std::string& b_text,
              const std::string& format, int threads,
              const std::optional<std::string>& cache_dir) {
    std::vector<ConstantKind> kinds;
    {
        std::stringstream ss(kinds_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) kinds.push_back(kind_of_string(tok));
    }
    auto mods = parse_mod_range(mods_text);

    SearchOptions opts;
    opts.threads = threads;
    ConstantEngine eng(opts);
    attach_cache(eng, cache_dir);

    struct Row {
        int modulus;
        std::string kind;
        int value;
    };
    std::vector<Row> rows;
    for (int m : mods) {
        ModuleSpec mod(m, rank);
        std::optional<std::vector<int>> b;
        if (!b_text.empty()) b = parse_weight_set(b_text, m);
        WeightConfig cfg = WeightConfig::make(mod, parse_weight_set(a_text, m), b);
        for (ConstantKind k : kinds)
            rows.push_back({m, to_string(k), eng.value(mod, cfg, k)});
    }

    if (format == "csv") {
        std::cout << "modulus,kind,value\n";
        for (const auto& r : rows)
            std::cout << r.modulus << "," << r.kind << "," << r.value << "\n";
    } else if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"modulus", r.modulus}, {"kind", r.kind}, {"value", r.value}});
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "modulus  kind  value\n";
        for (const auto& r : rows)
            std::cout << r.modulus << "        " << r.kind << "     " << r.value << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted zero-sum constant engine"};
    app.require_subcommand(1);

    // check
    std::string seq_text, a_text, b_text;
    int modulus = 0, rank = 1, exact_len = 0;
    bool consecutive = false, full = false;
    auto* check = app.add_subcommand("check", "decide weighted zero-sum subsequence presence");
    check->add_option("sequence", seq_text, "comma-separated elements; ':' joins coordinates")
        ->required();
    check->add_option("--mod", modulus, "modulus m")->required();
    check->add_option("--rank", rank, "rank r (default 1)");
    check->add_option("--a", a_text, "A weight set, e.g. \"+-1\" or \"1,2\"")->required();
    check->add_option("--b", b_text, "B weight set; omit for classical mode");
    check->add_option("--exact-len", exact_len, "require exactly this many terms");
    check->add_flag("--consecutive", consecutive, "require consecutive terms");
    check->add_flag("--full", full, "use all terms of the sequence");

    // compute
    std::string kind_text, cache_flag;
    int threads = 1, cap = 0;
    bool no_symmetry = false;
    auto* compute = app.add_subcommand("compute", "compute a constant with certificate");
    compute->add_option("kind", kind_text, "D, C, or E")->required();
    compute->add_option("--mod", modulus, "modulus m")->required();
    compute->add_option("--rank", rank, "rank r (default 1)");
    compute->add_option("--a", a_text, "A weight set")->required();
    compute->add_option("--b", b_text, "B weight set; omit for classical mode");
    compute->add_option("--threads", threads, "search worker count");
    compute->add_option("--cap", cap, "override the search cap");
    compute->add_flag("--no-symmetry", no_symmetry, "disable symmetry reduction");
    compute->add_option("--cache-dir", cache_flag, "certificate cache directory");

    // verify
    std::string config_path, out_json = "report.json", out_text = "report.txt";
    std::vector<int> conjecture_mods = {4, 6, 8};
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--config", config_path, "JSON ranges config");
    verify->add_option("--out-json", out_json, "JSON report path");
    verify->add_option("--out-text", out_text, "text report path");
    verify->add_option("--threads", threads, "claim evaluation worker count");
    verify->add_option("--conjecture-mods", conjecture_mods, "moduli for the conjecture scan");
    verify->add_option("--cache-dir", cache_flag, "certificate cache directory");

    // table
    std::string mods_text, format = "text";
    auto* table = app.add_subcommand("table", "emit a table of constants");
    table->add_option("kinds", kind_text, "comma-separated kinds, e.g. D,E")->required();
    table->add_option("--mods", mods_text, "modulus range: 3..8 or 3,5")->required();
    table->add_option("--rank", rank, "rank r (default 1)");
    table->add_option("--a", a_text, "A weight set")->required();
    table->add_option("--b", b_text, "B weight set; omit for classical mode");
    table->add_option("--format", format, "csv, json, or text");
    table->add_option("--threads", threads, "search worker count");
    table->add_option("--cache-dir", cache_flag, "certificate cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's error codes onto the documented usage-error code
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto cache_dir = cache_dir_from(cache_flag);
        if (*check) {
            return run_check(seq_text, modulus, rank, a_text, b_text, exact_len, consecutive,
                             full);
        }
        if (*compute) {
            return run_compute(kind_text, modulus, rank, a_text, b_text, threads, no_symmetry,
                               cache_dir, cap);
        }
        if (*verify) {
            return run_verify(config_path, out_json, out_text, threads, cache_dir,
                              conjecture_mods);
        }
        if (*table) {
            return run_table(kind_text, mods_text, rank, a_text, b_text, format, threads,
                             cache_dir);
        }
    } catch (const wzs::SearchIncomplete& e) {
        std::cerr << "incomplete: " << e.what() << " (bound: >= " << e.lower_bound << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
