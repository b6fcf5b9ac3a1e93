#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatlines/interpolation.hpp"
#include "fatlines/version.hpp"

namespace fatlines {

/// Directory-backed cache of actual-dimension results, one JSON file per
/// entry, keyed by the canonical (operation, system, prime, seed, version)
/// string. Safe because the computations it memoizes are deterministic.
class FileCache : public ActualDimensionCache {
  public:
    explicit FileCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    bool lookup(const std::string& key, std::uint64_t& value) override {
        std::lock_guard<std::mutex> guard(mutex_);
        const std::filesystem::path file = path_for(key);
        if (!std::filesystem::exists(file)) return false;
        try {
            std::ifstream in(file);
            const auto j = nlohmann::ordered_json::parse(in);
            if (j.at("key").get<std::string>() != key) return false;
            value = j.at("value").get<std::uint64_t>();
            return true;
        } catch (const std::exception&) {
            return false;  // unreadable entries behave like misses
        }
    }

    void store(const std::string& key, std::uint64_t value) override {
        std::lock_guard<std::mutex> guard(mutex_);
        const nlohmann::ordered_json j{
            {"schema_version", kSchemaVersion},
            {"key", key},
            {"value", value},
            {"timestamp",
             std::chrono::duration_cast<std::chrono::seconds>(
                 std::chrono::system_clock::now().time_since_epoch())
                 .count()}};
        std::ofstream out(path_for(key));
        out << j.dump(2) << "\n";
    }

    struct AuditResult {
        std::size_t audited = 0;
        std::size_t mismatches = 0;
        std::vector<std::string> details;
    };

    /// Recomputes up to `count` randomly chosen entries and compares them to
    /// the stored values. Entries from other tool versions are skipped.
    AuditResult audit(std::size_t count, std::uint64_t seed) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        std::mt19937_64 rng(seed);
        std::shuffle(files.begin(), files.end(), rng);

        AuditResult result;
        for (const auto& file : files) {
            if (result.audited >= count) break;
            std::string key;
            std::uint64_t stored = 0;
            try {
                std::ifstream in(file);
                const auto j = nlohmann::ordered_json::parse(in);
                key = j.at("key").get<std::string>();
                stored = j.at("value").get<std::uint64_t>();
            } catch (const std::exception&) {
                continue;
            }
            std::uint64_t recomputed = 0;
            if (!recompute(key, recomputed)) continue;
            ++result.audited;
            if (recomputed != stored) {
                ++result.mismatches;
                result.details.push_back(key + ": stored " +
                                         std::to_string(stored) + ", recomputed " +
                                         std::to_string(recomputed));
            }
        }
        return result;
    }

  private:
    std::filesystem::path path_for(const std::string& key) const {
        // FNV-1a 64
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : key) {
            h ^= c;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(h));
        return dir_ / (std::string(buf) + ".json");
    }

    /// Parses "actual_dimension|d=..;m=..|p=..|seed=..|v=.." and recomputes.
    static bool recompute(const std::string& key, std::uint64_t& value) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= key.size()) {
            const std::size_t next = key.find('|', pos);
            parts.push_back(key.substr(
                pos, next == std::string::npos ? std::string::npos : next - pos));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (parts.size() != 5 || parts[0] != "actual_dimension") return false;
        if (parts[4] != std::string("v=") + kToolVersion) return false;
        try {
            const std::string& sys = parts[1];  // d=12;m=3,3,...  (m may be empty)
            const std::size_t semi = sys.find(';');
            const unsigned degree =
                static_cast<unsigned>(std::stoul(sys.substr(2, semi - 2)));
            std::vector<unsigned> mults;
            const std::string mstr = sys.substr(semi + 3);
            std::size_t mpos = 0;
            while (mpos < mstr.size()) {
                std::size_t mnext = mstr.find(',', mpos);
                if (mnext == std::string::npos) mnext = mstr.size();
                mults.push_back(static_cast<unsigned>(
                    std::stoul(mstr.substr(mpos, mnext - mpos))));
                mpos = mnext + 1;
            }
            const auto prime = static_cast<std::uint32_t>(std::stoul(parts[2].substr(2)));
            const auto seed = std::stoull(parts[3].substr(5));
            const PrimeField F{PrimeModulus{prime}};
            value = actual_dimension(FatFlatSystem(degree, mults), F, seed);
            return true;
        } catch (const std::exception&) {
            return false;
        }
    }

    std::filesystem::path dir_;
    std::mutex mutex_;
};

}  // namespace fatlines
