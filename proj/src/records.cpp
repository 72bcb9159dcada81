#include "fuzzy/records.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fuzzy {

const RecordValue* ResultRecord::find(const std::string& key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) return &v;
    }
    return nullptr;
}

double ResultRecord::as_double(const std::string& key) const {
    const RecordValue* v = find(key);
    if (!v) throw std::out_of_range("ResultRecord: missing key " + key);
    if (std::holds_alternative<double>(*v)) return std::get<double>(*v);
    return static_cast<double>(std::get<long long>(*v));
}

void RunConfig::validate() const {
    if (ns.empty()) throw std::invalid_argument("config: N list must not be empty");
    int prev = 0;
    for (int n : ns) {
        if (n < 1 || n <= prev) {
            throw std::invalid_argument(
                "config: N list must be strictly increasing with all N >= 1");
        }
        prev = n;
    }
    if (band < 1) throw std::invalid_argument("config: band limit must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
    if (perturb_eps < 0.0) {
        throw std::invalid_argument("config: perturbation strength must be >= 0");
    }
    if (squash_rounds < 0) {
        throw std::invalid_argument("config: squash rounds must be >= 0");
    }
    if (format != "json" && format != "csv") {
        throw std::invalid_argument("config: format must be json or csv");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string value_str(const RecordValue& v) {
    if (std::holds_alternative<long long>(v)) {
        return std::to_string(std::get<long long>(v));
    }
    return format_double(std::get<double>(v));
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
        }
        out += ch;
    }
    return out;
}

}  // namespace

std::string emit_json(const RunConfig& config, const std::vector<ResultRecord>& records) {
    std::ostringstream os;
    os << "{\n  \"header\": {\n";
    os << "    \"command\": \"" << json_escape(config.command) << "\",\n";
    os << "    \"config\": {";
    os << "\"ns\": [";
    for (std::size_t i = 0; i < config.ns.size(); ++i) {
        os << (i ? "," : "") << config.ns[i];
    }
    os << "], \"band\": " << config.band;
    os << ", \"tol\": " << format_double(config.tol);
    os << ", \"perturb_eps\": " << format_double(config.perturb_eps);
    os << ", \"squash_rounds\": " << config.squash_rounds;
    os << ", \"format\": \"" << json_escape(config.format) << "\"";
    os << ", \"c\": " << format_double(config.c);
    os << "},\n";
    os << "    \"seed\": " << config.seed << ",\n";
    os << "    \"version\": \"1.0.0\"\n";
    os << "  },\n  \"records\": [\n";
    for (std::size_t r = 0; r < records.size(); ++r) {
        os << "    {";
        const auto& fields = records[r].fields;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            os << (i ? ", " : "") << "\"" << json_escape(fields[i].first)
               << "\": " << value_str(fields[i].second);
        }
        os << "}" << (r + 1 < records.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

std::string emit_csv(const std::vector<ResultRecord>& records) {
    std::ostringstream os;
    if (records.empty()) return "";
    const auto& head = records.front().fields;
    for (std::size_t i = 0; i < head.size(); ++i) {
        os << (i ? "," : "") << head[i].first;
    }
    os << "\n";
    for (const auto& rec : records) {
        if (rec.fields.size() != head.size()) {
            throw std::logic_error("emit_csv: records do not share one schema");
        }
        for (std::size_t i = 0; i < rec.fields.size(); ++i) {
            if (rec.fields[i].first != head[i].first) {
                throw std::logic_error("emit_csv: records do not share one schema");
            }
            os << (i ? "," : "") << value_str(rec.fields[i].second);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace fuzzy
