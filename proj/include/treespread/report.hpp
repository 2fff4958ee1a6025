#pragma once

#include <chrono>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treespread/numbers.hpp"

namespace treespread {

// Ordered key/value report. Integers and rationals render as exact decimal
// strings ("p/q" for rationals); double fields are Monte Carlo estimates or
// transcendental references and must carry an *_approx key.
class Report {
public:
    void add(const std::string& key, const std::string& value) { items_.emplace_back(key, value); }
    void add(const std::string& key, const char* value) { items_.emplace_back(key, value); }
    void add(const std::string& key, const Integer& value) { items_.emplace_back(key, to_string(value)); }
    void add(const std::string& key, const Rational& value) { items_.emplace_back(key, to_string(value)); }
    void add(const std::string& key, long value) { items_.emplace_back(key, std::to_string(value)); }
    void add(const std::string& key, int value) { items_.emplace_back(key, std::to_string(value)); }
    void add(const std::string& key, std::uint64_t value) { items_.emplace_back(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { items_.emplace_back(key, value ? "true" : "false"); }

    void add_approx(const std::string& key, double value) {
        std::ostringstream out;
        out.precision(12);
        out << value;
        items_.emplace_back(key, out.str());
    }

    void set_elapsed(double ms) { elapsed_ms_ = ms; }

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& [k, v] : items_) out << k << ": " << v << '\n';
        if (elapsed_ms_ >= 0) {
            out.precision(3);
            out << std::fixed << "elapsed_ms: " << elapsed_ms_ << '\n';
        }
        return out.str();
    }

    std::string to_json() const {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : items_) j[k] = v;
        if (elapsed_ms_ >= 0) j["elapsed_ms"] = elapsed_ms_;
        return j.dump(2) + "\n";
    }

private:
    std::vector<std::pair<std::string, std::string>> items_;
    double elapsed_ms_ = -1;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace treespread
