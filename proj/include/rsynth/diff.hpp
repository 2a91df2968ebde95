#pragma once

// Longest-matching-block alignment (Ratcliff/Obershelp style) and rewrite
// candidate extraction from (current, target) string pairs.

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rsynth/dsl.hpp"

namespace rsynth {

enum class EditKind { substitute, insert, remove };

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const noexcept { return end - begin; }
    bool empty() const noexcept { return begin == end; }
    friend bool operator==(const Span&, const Span&) = default;
};

struct EditRegion {
    Span src;
    Span dst;
    EditKind kind = EditKind::substitute;
    // Lengths of the identically matched runs immediately before and after the
    // region; context extension never reaches past them.
    std::size_t left_match = 0;
    std::size_t right_match = 0;

    friend bool operator==(const EditRegion& a, const EditRegion& b) {
        return a.src == b.src && a.dst == b.dst && a.kind == b.kind;
    }
};

struct MatchBlock {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t size = 0;
    friend bool operator==(const MatchBlock&, const MatchBlock&) = default;
};

/// Matching blocks in increasing order, without the zero-size sentinel.
std::vector<MatchBlock> matching_blocks(TextView a, TextView b);

/// Non-matching regions between the matching blocks. Empty for equal strings.
std::vector<EditRegion> align(TextView a, TextView b);

/// Replays regions over `a`, reconstructing the aligned target.
Text replay_regions(TextView a, TextView b, std::span<const EditRegion> regions);

inline constexpr std::size_t kDefaultCandidateCap = 256;

struct CandidateSet {
    std::vector<ReplaceOp> ops;         // descending count, then pattern, then replacement
    std::map<ReplaceOp, int> origin;    // number of pairs proposing each op
};

struct StringPair {
    TextView current;
    TextView target;
};

/// Minimal per-region ops, ops split into <=3-length chains for long regions,
/// and context-extended variants using up to `max_context` matched characters
/// per side. Ops that would leave every current string untouched are dropped.
CandidateSet extract_candidates(std::span<const StringPair> pairs, std::size_t max_context,
                                std::size_t cap = kDefaultCandidateCap);

}  // namespace rsynth
