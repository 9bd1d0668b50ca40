#pragma once

// JSON serialization for witnesses, certificates, and claim reports, plus
// the on-disk certificate cache (one file per key, atomic
// write-temp-then-rename).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wzs/search.hpp"
#include "wzs/theorems.hpp"
#include "wzs/weights.hpp"

namespace wzs {

inline constexpr const char* kEngineVersion = "wzs-0.1.0";

using nlohmann::json;

inline json element_to_json(const ModuleSpec& mod, Elem e) {
    return json(mod.coords_of(e));
}

inline json sequence_to_json(const ModuleSpec& mod, const Sequence& s) {
    json arr = json::array();
    for (Elem e : s) arr.push_back(element_to_json(mod, e));
    return arr;
}

inline Sequence sequence_from_json(const ModuleSpec& mod, const json& arr) {
    Sequence s;
    for (const auto& el : arr) {
        std::vector<int> coords = el.get<std::vector<int>>();
        s.push_back(mod.elem_of(coords));
    }
    return s;
}

inline json witness_to_json(const Witness& w) {
    json j;
    j["indices"] = w.indices;
    j["a_weights"] = w.a_weights;
    j["b_weights"] = w.b_weights ? json(*w.b_weights) : json(nullptr);
    return j;
}

inline std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    auto t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string kind_from_char(ConstantKind k) { return to_string(k); }

inline ConstantKind kind_of_string(const std::string& s) {
    if (s == "D") return ConstantKind::D;
    if (s == "C") return ConstantKind::C;
    if (s == "E") return ConstantKind::E;
    throw std::invalid_argument("unknown constant kind: " + s);
}

inline json certificate_to_json(const ConstantCertificate& c,
                                const std::string& timestamp = utc_timestamp()) {
    json j;
    j["kind"] = to_string(c.kind);
    j["modulus"] = c.module.modulus();
    j["rank"] = c.module.rank();
    j["a_set"] = c.config.a_set;
    j["b_set"] = c.config.b_set ? json(*c.config.b_set) : json(nullptr);
    j["value"] = c.value;
    j["extremal"] = sequence_to_json(c.module, c.extremal);
    j["nodes_explored"] = c.stats.nodes_explored;
    j["symmetries_used"] = c.stats.symmetries_used;
    j["exhaustive"] = c.stats.exhaustive;
    j["engine_version"] = kEngineVersion;
    j["timestamp"] = timestamp;
    return j;
}

inline ConstantCertificate certificate_from_json(const json& j) {
    ModuleSpec mod(j.at("modulus").get<int>(), j.at("rank").get<int>());
    std::optional<std::vector<int>> b;
    if (!j.at("b_set").is_null()) b = j.at("b_set").get<std::vector<int>>();
    WeightConfig cfg = WeightConfig::make(mod, j.at("a_set").get<std::vector<int>>(), b);
    ConstantCertificate c{kind_of_string(j.at("kind").get<std::string>()),
                          mod,
                          cfg,
                          j.at("value").get<int>(),
                          sequence_from_json(mod, j.at("extremal")),
                          SearchStats{j.at("nodes_explored").get<std::uint64_t>(),
                                      j.at("symmetries_used").get<std::vector<std::string>>(),
                                      j.at("exhaustive").get<bool>()}};
    return c;
}

inline json claim_to_json(const ClaimResult& r) {
    json j;
    j["claim_id"] = r.claim_id;
    j["parameters"] = {{"modulus", r.params.modulus},
                       {"rank", r.params.rank},
                       {"a", r.params.a},
                       {"b", r.params.b}};
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["relation"] = r.relation;
    j["status"] = r.status;
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.certificates.empty()) {
        json certs = json::array();
        // fixed timestamp keeps verify reports byte-identical across runs
        for (const auto& c : r.certificates) certs.push_back(certificate_to_json(c, ""));
        j["certificates"] = certs;
    }
    return j;
}

// One file per (module, weights, kind) key. Re-computation with an equal
// key and engine version must reproduce the same value, so a hit is
// returned as-is.
class CertificateCache {
public:
    explicit CertificateCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    static std::string key_filename(const ModuleSpec& mod, const WeightConfig& cfg,
                                    ConstantKind kind) {
        std::ostringstream os;
        os << to_string(kind) << "_m" << mod.modulus() << "_r" << mod.rank() << "_a";
        for (std::size_t i = 0; i < cfg.a_set.size(); ++i)
            os << (i ? "-" : "") << cfg.a_set[i];
        os << "_b";
        if (cfg.b_set) {
            for (std::size_t i = 0; i < cfg.b_set->size(); ++i)
                os << (i ? "-" : "") << (*cfg.b_set)[i];
        } else {
            os << "none";
        }
        os << ".json";
        return os.str();
    }

    std::optional<ConstantCertificate> load(const ModuleSpec& mod, const WeightConfig& cfg,
                                            ConstantKind kind) const {
        auto path = dir_ / key_filename(mod, cfg, kind);
        std::ifstream in(path);
        if (!in) return std::nullopt;
        json j;
        in >> j;
        if (j.at("engine_version").get<std::string>() != kEngineVersion)
            return std::nullopt;
        return certificate_from_json(j);
    }

    void store(const ConstantCertificate& cert) const {
        auto path = dir_ / key_filename(cert.module, cert.config, cert.kind);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << certificate_to_json(cert).dump(2) << "\n";
        }
        std::filesystem::rename(tmp, path);
    }

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace wzs
