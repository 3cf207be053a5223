#include "btl/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "btl/types.hpp"

namespace btl {

const char* to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Record: return "record";
    case Status::Skipped: return "skipped";
    default: return "error";
    }
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

// values with spaces or '=' are quoted so the line stays splittable
std::string quote(const std::string& v) {
    bool plain = !v.empty();
    for (char c : v)
        if (c == ' ' || c == '=' || c == '"' || c == '\t' || c == '\n') plain = false;
    if (plain) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

bool numeric(const std::string& v) {
    if (v.empty()) return false;
    if (v == "inf" || v == "-inf" || v == "nan") return true;
    double d = 0.0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), d);
    return res.ec == std::errc() && res.ptr == v.data() + v.size();
}

}  // namespace

void Record::set(const std::string& key, double v) { fields.emplace_back(key, format_number(v)); }
void Record::set(const std::string& key, long long v) { fields.emplace_back(key, std::to_string(v)); }
void Record::set(const std::string& key, bool v) { fields.emplace_back(key, v ? "true" : "false"); }
void Record::set(const std::string& key, const std::string& v) { fields.emplace_back(key, v); }

std::string Record::get(const std::string& key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    return {};
}

bool Report::hard_failure() const {
    for (const Record& r : records)
        if (r.hard && (r.status == Status::Fail || r.status == Status::Error)) return true;
    return false;
}

std::string Report::machine() const {
    std::ostringstream os;
    os << "record=manifest";
    for (const auto& [k, v] : manifest) os << ' ' << k << '=' << quote(v);
    os << '\n';
    for (const Record& r : records) {
        os << "record=suite name=" << r.suite << " anchor=" << quote(r.anchor) << " hard=" << (r.hard ? "true" : "false")
           << " status=" << to_string(r.status);
        if (!r.message.empty()) os << " message=" << quote(r.message);
        for (const auto& [k, v] : r.fields) os << ' ' << k << '=' << quote(v);
        os << '\n';
    }
    return os.str();
}

std::string Report::csv() const {
    std::ostringstream os;
    os << "suite,anchor,key,value\n";
    for (const Record& r : records)
        for (const auto& [k, v] : r.fields)
            if (numeric(v)) os << r.suite << ',' << r.anchor << ',' << k << ',' << v << '\n';
    return os.str();
}

std::string Report::summary() const {
    std::ostringstream os;
    int counts[5] = {0, 0, 0, 0, 0};
    for (const Record& r : records) ++counts[static_cast<int>(r.status)];
    for (const auto& [k, v] : manifest) os << k << ": " << v << '\n';
    os << '\n';
    double total = 0.0;
    for (const Record& r : records) {
        char line[256];
        std::snprintf(line, sizeof line, "%-8s %-34s %-28s %8.3fs", to_string(r.status), r.suite.c_str(),
                      r.anchor.c_str(), r.runtime);
        os << line;
        if (!r.message.empty()) os << "  " << r.message;
        os << '\n';
        total += r.runtime;
    }
    os << "\npass " << counts[0] << ", fail " << counts[1] << ", record " << counts[2] << ", skipped " << counts[3]
       << ", error " << counts[4] << "; total " << format_number(std::round(total * 1000) / 1000) << " s\n";
    os << (hard_failure() ? "HARD FAILURE\n" : "all hard assertions pass\n");
    return os.str();
}

void Report::write(const std::string& dir) const {
    std::filesystem::create_directories(dir);
    auto put = [&](const char* name, const std::string& body) {
        std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
        if (!f) throw Error(std::string("cannot write ") + name + " in " + dir);
        f << body;
    };
    put("report.txt", machine());
    put("constants.csv", csv());
    put("summary.txt", summary());
}

}  // namespace btl
