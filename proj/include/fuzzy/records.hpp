#pragma once

// Flat result records and their machine-readable emission. The same key/value
// content is serialized to JSON and CSV; doubles are printed with 17
// significant digits so runs with identical configs reproduce byte for byte.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fuzzy {

using RecordValue = std::variant<long long, double>;

struct ResultRecord {
    std::vector<std::pair<std::string, RecordValue>> fields;

    void set(const std::string& key, long long v) { fields.emplace_back(key, v); }
    void set(const std::string& key, int v) {
        fields.emplace_back(key, static_cast<long long>(v));
    }
    void set(const std::string& key, double v) { fields.emplace_back(key, v); }

    const RecordValue* find(const std::string& key) const;
    double as_double(const std::string& key) const;
};

struct RunConfig {
    std::string command;
    std::vector<int> ns;
    int band = 8;
    double tol = 1e-9;
    double perturb_eps = 0.0;
    std::uint64_t seed = 1;
    int squash_rounds = 2;
    std::string format = "json";
    std::string out;     // empty = stdout
    double c = 1.0;      // exclusions only

    /// Throws std::invalid_argument on violated invariants (usage errors).
    void validate() const;
};

std::string format_double(double v);  // %.17g

std::string emit_json(const RunConfig& config, const std::vector<ResultRecord>& records);
std::string emit_csv(const std::vector<ResultRecord>& records);

}  // namespace fuzzy
