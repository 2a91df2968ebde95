#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsynth/dsl.hpp"
#include "rsynth/utf8.hpp"

namespace testing {

inline rsynth::Text T(const char* s) { return rsynth::from_utf8(s); }

inline rsynth::ReplaceOp op(const char* p, const char* r) { return rsynth::ReplaceOp::from_utf8(p, r); }

inline rsynth::Task task(std::vector<std::pair<const char*, const char*>> pairs, int budget,
                         const char* id = "t") {
    std::vector<rsynth::Example> ex;
    for (auto [i, o] : pairs) ex.push_back({T(i), T(o)});
    return rsynth::make_task(id, std::move(ex), budget);
}

}  // namespace testing
