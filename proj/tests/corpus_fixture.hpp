#pragma once

#include <string>
#include <vector>

#include "wnc/wnc.hpp"

namespace testing_support {

/// The default corpus, built once per test binary.
inline const std::vector<wnc::Specimen>& corpus() {
    static const std::vector<wnc::Specimen> specimens = [] {
        std::vector<wnc::Specimen> out;
        for (const auto& entry : wnc::default_corpus().entries) {
            auto expr = wnc::parse_ring_expr(entry.text);
            out.emplace_back(wnc::build(*expr), expr);
        }
        return out;
    }();
    return specimens;
}

inline std::vector<std::uint32_t> indices(const std::vector<wnc::ElementId>& xs) {
    std::vector<std::uint32_t> out;
    for (auto x : xs) out.push_back(x.index);
    return out;
}

}  // namespace testing_support
