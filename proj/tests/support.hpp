#pragma once

// Shared fixtures for the unit suite: the desk-scale field and the full
// lemma-checked scans are expensive enough to build once per process.

#include <thread>

#include "fivezero/code.hpp"
#include "fivezero/syscount.hpp"
#include "fivezero/wdist.hpp"

namespace testsupport {

inline int64_t test_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min<unsigned>(hw, 8);
}

inline const fivezero::ExtensionField& field35() {
    static const fivezero::ExtensionField F = fivezero::build_field(3, 5);
    return F;
}

inline const fivezero::ExtensionField& field53() {
    static const fivezero::ExtensionField F = fivezero::build_field(5, 3);
    return F;
}

inline fivezero::ScanOptions lemma_scan_options() {
    fivezero::ScanOptions opts;
    opts.threads = test_threads();
    opts.check_lemmas = true;
    return opts;
}

inline const fivezero::ScanResult& scan35(int64_t k) {
    static const fivezero::ScanResult s1 = fivezero::scan_all(field35(), 1, lemma_scan_options());
    static const fivezero::ScanResult s2 = fivezero::scan_all(field35(), 2, lemma_scan_options());
    return k == 1 ? s1 : s2;
}

// frozen desk-scale expectations, cross-computed by exhaustive enumeration
inline const std::map<long long, long long>& table1_w0() {
    static const std::map<long long, long long> t{{486, 1}, {54, 10890}, {-54, 8712}, {0, 39446}};
    return t;
}

inline const std::map<long long, long long>& table2_wnz() {
    static const std::map<long long, long long> t{{54, 10485}, {-54, 8388}, {162, 60}, {-162, 30}, {0, 40086}};
    return t;
}

inline const std::map<long long, long long>& s_values35() {
    static const std::map<long long, long long> t{
        {972, 1},         {540, 21780},          {486, 78892},        {432, 17424},
        {324, 871200},    {216, 304484400},      {162, 1164097440},   {108, 26966504070},
        {54, 204285161520}, {0, 433180274428},   {-54, 163428129216}, {-108, 17254908792},
        {-162, 582048720}, {-216, 121793760},    {-324, 217800}};
    return t;
}

inline const std::map<long long, long long>& weights35() {
    static const std::map<long long, long long> t{
        {0, 1},           {72, 21780},         {81, 78892},         {90, 17424},
        {108, 871200},    {126, 304484400},    {135, 1164097440},   {144, 26966504070},
        {153, 204285161520}, {162, 433180274428}, {171, 163428129216}, {180, 17254908792},
        {189, 582048720}, {198, 121793760},    {216, 217800}};
    return t;
}

inline bool dist_equals(const fivezero::ValueDistribution& d, const std::map<long long, long long>& expect) {
    if (d.freq.size() != expect.size()) return false;
    for (const auto& [v, f] : expect) {
        const auto it = d.freq.find(v);
        if (it == d.freq.end() || it->second != f) return false;
    }
    return true;
}

inline fivezero::FieldElement random_element(const fivezero::ExtensionField& F, std::mt19937_64& rng) {
    return F.from_packed(static_cast<int64_t>(rng() % static_cast<uint64_t>(F.q)));
}

}  // namespace testsupport
