#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfpi {

// One axiom instance: stable axiom id, serialized color tuple, outcome, and a
// witness (basis index tuple) when it fails.
struct CheckEntry {
    std::string axiom;
    std::vector<std::string> colors;
    bool pass = true;
    std::vector<std::int64_t> witness;
    std::string detail;

    friend bool operator<(const CheckEntry& a, const CheckEntry& b) {
        if (a.axiom != b.axiom) return a.axiom < b.axiom;
        if (a.colors != b.colors) return a.colors < b.colors;
        return a.witness < b.witness;
    }
};

struct VerificationReport {
    std::vector<CheckEntry> entries;

    bool all_pass() const {
        return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
    }

    std::size_t failure_count() const {
        return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(),
                                                      [](const CheckEntry& e) { return !e.pass; }));
    }

    const CheckEntry* first_failure() const {
        for (const auto& e : entries)
            if (!e.pass) return &e;
        return nullptr;
    }

    bool has_failure(const std::string& axiom) const {
        return std::any_of(entries.begin(), entries.end(),
                           [&](const CheckEntry& e) { return !e.pass && e.axiom == axiom; });
    }

    void add(CheckEntry e) { entries.push_back(std::move(e)); }

    void merge(VerificationReport other) {
        for (auto& e : other.entries) entries.push_back(std::move(e));
    }

    // Deterministic order: (axiom, colors, witness).
    void sort() { std::sort(entries.begin(), entries.end()); }

    std::string summary() const {
        std::ostringstream os;
        os << entries.size() << " checks, " << failure_count() << " failures";
        if (const CheckEntry* f = first_failure()) {
            os << "; first: " << f->axiom;
            if (!f->colors.empty()) {
                os << " @ (";
                for (std::size_t i = 0; i < f->colors.size(); ++i) os << (i ? "," : "") << f->colors[i];
                os << ")";
            }
            if (!f->witness.empty()) {
                os << " witness [";
                for (std::size_t i = 0; i < f->witness.size(); ++i) os << (i ? "," : "") << f->witness[i];
                os << "]";
            }
            if (!f->detail.empty()) os << " -- " << f->detail;
        }
        return os.str();
    }
};

// Thrown by constructors whose postconditions are verified on the spot.
struct construction_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_pass(const VerificationReport& r, const std::string& context) {
    if (!r.all_pass()) throw construction_failure(context + ": " + r.summary());
}

} // namespace hopfpi
