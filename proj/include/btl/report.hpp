#pragma once
// Line-oriented key=value report, a constants CSV and a human summary.

#include <string>
#include <utility>
#include <vector>

namespace btl {

enum class Status { Pass, Fail, Record, Skipped, Error };
const char* to_string(Status s);

struct Record {
    std::string suite;
    std::string anchor;     // statement tag or "plumbing"
    bool hard = true;       // hard assertion (measured-constant suites are not)
    Status status = Status::Record;
    std::string message;
    std::vector<std::pair<std::string, std::string>> fields;
    double runtime = 0.0;   // seconds; human summary only

    void set(const std::string& key, double v);
    void set(const std::string& key, long long v);
    void set(const std::string& key, int v) { set(key, static_cast<long long>(v)); }
    void set(const std::string& key, bool v);
    void set(const std::string& key, const std::string& v);
    void set(const std::string& key, const char* v) { set(key, std::string(v)); }
    // value of a field, empty when absent
    std::string get(const std::string& key) const;
};

struct Report {
    std::vector<std::pair<std::string, std::string>> manifest;
    std::vector<Record> records;

    void note(const std::string& key, const std::string& value) { manifest.emplace_back(key, value); }
    bool hard_failure() const;

    std::string machine() const;   // deterministic: no runtimes, no timestamps
    std::string csv() const;       // suite,anchor,key,value for numeric fields
    std::string summary() const;   // human readable, with runtimes

    // report.txt, constants.csv, summary.txt
    void write(const std::string& dir) const;
};

// Shortest round-trip decimal form, so equal doubles print equally.
std::string format_number(double v);

}  // namespace btl
